#pragma once

#include "fockdiv/divisor.hpp"
#include "fockdiv/region.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fockdiv {

// Experiment description read from a JSON file. Every optional field is filled with its
// default in `resolved`, which is what reports print for provenance.
//
//   alpha            positive real, default 1
//   seed             unsigned, default 0 (jitter of generated lattices)
//   divisor          {"source": "lattice" | "file" | "radial-rings" | "custom", ...}
//   window           {"shape": "box", "xmin", "xmax", "ymin", "ymax", "h", "collar"} or
//                    {"shape": "disc", "center": [re, im], "radius", "h", "collar"}
//   truncation       integer or list; default: recommended for the divisor
//   margins          list of C values, default [0]
//   radii            list of R values (uniqueness)
//   sweep            {"parameter": name, "values": [...]} overriding a divisor field (frame)
//   family           dichotomy family (see commands.hpp)
//   radial_weight    {"q", "a", "grid_n"} (frame, optional)
//   plot             bool, default false
struct Config {
  std::filesystem::path source;  // config file, empty for in-memory configs
  std::filesystem::path base_dir;
  nlohmann::json resolved;

  double alpha = 1.0;
  std::uint64_t seed = 0;
  nlohmann::json divisor;
  std::optional<Region> window;
  std::vector<int> truncation;
  std::vector<double> margins{0.0};
  std::vector<double> radii;
  std::optional<nlohmann::json> sweep;
  std::optional<nlohmann::json> family;
  std::optional<nlohmann::json> radial_weight;
  bool plot = false;
};

// Throws ParseError (with line) for malformed JSON and ParameterError for invalid fields.
Config parse_config(const std::string& text, const std::filesystem::path& base_dir = ".");
Config load_config(const std::filesystem::path& path);

void set_seed(Config& c, std::uint64_t seed);

// Builds the divisor from a source spec; `spec` defaults to c.divisor.
Divisor make_divisor(const Config& c, const nlohmann::json* spec = nullptr);

// Copy of the divisor spec with one numeric field replaced.
nlohmann::json override_field(const nlohmann::json& spec, const std::string& key, double value);

} // namespace fockdiv
