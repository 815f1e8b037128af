#pragma once

#include <string>
#include <vector>

namespace fockdiv::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct Plot {
  std::string title, xlabel, ylabel;
  bool log_y = false;
  std::vector<Series> series;
};

// Self-contained SVG line chart. Non-finite points are skipped.
std::string render(const Plot& p, int width = 640, int height = 420);
void write_file(const Plot& p, const std::string& path);

} // namespace fockdiv::svg
