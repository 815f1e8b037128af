#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fockdiv::csv {

// Shortest decimal string that parses back to the same double; "inf", "-inf", "nan"
// for non-finite values.
std::string format(double v);
std::string format(long long v);

bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

std::vector<std::string_view> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

// Table with '#'-prefixed provenance lines followed by a header row and data rows.
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void note(std::string key, std::string value) { notes_.emplace_back(std::move(key), std::move(value)); }
  void row(std::vector<std::string> cells);
  void row(const std::vector<double>& values);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<std::vector<std::string>> rows_;
};

} // namespace fockdiv::csv
