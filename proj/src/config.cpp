#include "fockdiv/config.hpp"

#include "fockdiv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fockdiv {

using nlohmann::json;

namespace {

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParameterError(where + ": missing '" + key + "'");
  if (!j[key].is_number()) throw ParameterError(where + ": '" + key + "' must be a number");
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) throw ParameterError(where + ": '" + key + "' must be finite");
  return v;
}

double number_or(const json& j, const char* key, double dflt, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : dflt;
}

double positive(const json& j, const char* key, const std::string& where) {
  const double v = number(j, key, where);
  if (!(v > 0.0)) throw ParameterError(where + ": '" + key + "' must be positive");
  return v;
}

int positive_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParameterError(where + ": '" + key + "' must be an integer");
  const long long v = j[key].get<long long>();
  if (v < 1 || v > 1'000'000'000) throw ParameterError(where + ": '" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

std::vector<double> number_list(const json& j, const std::string& where) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(j.get<double>());
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ParameterError(where + ": list entries must be numbers");
      out.push_back(v.get<double>());
    }
  } else if (j.is_object() && j.contains("from")) {
    const double a = number(j, "from", where), b = number(j, "to", where), s = positive(j, "step", where);
    const int n = static_cast<int>(std::floor((b - a) / s + 1e-9));
    for (int i = 0; i <= n; ++i) out.push_back(a + i * s);
  } else {
    throw ParameterError(where + ": expected a number, a list or {from, to, step}");
  }
  return out;
}

Region parse_window(const json& w) {
  const std::string where = "window";
  const std::string shape = w.value("shape", "box");
  const double h = positive(w, "h", where);
  const double collar = number_or(w, "collar", 0.0, where);
  if (collar < 0) throw ParameterError("window: 'collar' must be nonnegative");
  if (shape == "box") {
    const double x0 = number(w, "xmin", where), x1 = number(w, "xmax", where);
    const double y0 = number(w, "ymin", where), y1 = number(w, "ymax", where);
    if (!(x1 > x0) || !(y1 > y0)) throw ParameterError("window: empty box");
    return Region::box(x0, x1, y0, y1, h, collar);
  }
  if (shape == "disc") {
    cplx c = 0.0;
    if (w.contains("center")) {
      const auto& cj = w["center"];
      if (!cj.is_array() || cj.size() != 2 || !cj[0].is_number() || !cj[1].is_number())
        throw ParameterError("window: 'center' must be [re, im]");
      c = {cj[0].get<double>(), cj[1].get<double>()};
    }
    return Region::disc(c, positive(w, "radius", where), h, collar);
  }
  throw ParameterError("window: unknown shape '" + shape + "'");
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

} // namespace

Config parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what(), line_of(text, e.byte));
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object", 1);

  Config c;
  c.base_dir = base_dir;
  c.alpha = number_or(j, "alpha", 1.0, "config");
  if (!(c.alpha > 0)) throw ParameterError("config: 'alpha' must be positive");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParameterError("config: 'seed' must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (!j.contains("divisor") || !j["divisor"].is_object()) throw ParameterError("config: missing 'divisor' section");
  c.divisor = j["divisor"];
  if (!c.divisor.contains("source") || !c.divisor["source"].is_string())
    throw ParameterError("divisor: missing 'source'");
  if (j.contains("window")) c.window = parse_window(j["window"]);
  if (j.contains("truncation")) {
    for (double v : number_list(j["truncation"], "truncation")) {
      if (v < 1 || v != std::floor(v)) throw ParameterError("truncation: entries must be positive integers");
      c.truncation.push_back(static_cast<int>(v));
    }
  }
  if (j.contains("margins")) c.margins = number_list(j["margins"], "margins");
  for (double m : c.margins)
    if (m < 0) throw ParameterError("margins: entries must be nonnegative");
  if (j.contains("radii")) c.radii = number_list(j["radii"], "radii");
  for (double r : c.radii)
    if (!(r > 0)) throw ParameterError("radii: entries must be positive");
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (!s.is_object() || !s.contains("parameter") || !s["parameter"].is_string() || !s.contains("values"))
      throw ParameterError("sweep: needs 'parameter' and 'values'");
    c.sweep = s;
    c.sweep->at("values") = number_list(s["values"], "sweep");
  }
  if (j.contains("family")) {
    if (!j["family"].is_object()) throw ParameterError("family: must be an object");
    c.family = j["family"];
  }
  if (j.contains("radial_weight")) {
    const auto& r = j["radial_weight"];
    if (!r.is_object()) throw ParameterError("radial_weight: must be an object");
    c.radial_weight = r;
    if (!c.radial_weight->contains("grid_n")) (*c.radial_weight)["grid_n"] = 4096;
  }
  if (j.contains("plot")) {
    if (!j["plot"].is_boolean()) throw ParameterError("config: 'plot' must be true or false");
    c.plot = j["plot"].get<bool>();
  }

  c.resolved = j;
  c.resolved["alpha"] = c.alpha;
  c.resolved["seed"] = c.seed;
  c.resolved["margins"] = c.margins;
  c.resolved["plot"] = c.plot;
  if (c.sweep) c.resolved["sweep"] = *c.sweep;
  if (c.radial_weight) c.resolved["radial_weight"] = *c.radial_weight;
  // Validate the divisor spec up front.
  (void)make_divisor(c);
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  Config c = parse_config(ss.str(), base);
  c.source = path;
  return c;
}

void set_seed(Config& c, std::uint64_t seed) {
  c.seed = seed;
  c.resolved["seed"] = seed;
}

json override_field(const json& spec, const std::string& key, double value) {
  json s = spec;
  s[key] = value;
  return s;
}

Divisor make_divisor(const Config& c, const json* spec_in) {
  const json& s = spec_in ? *spec_in : c.divisor;
  const std::string src = s.value("source", "");
  const std::string where = "divisor";
  if (src == "lattice") {
    const std::string kind = s.value("kind", "square");
    const double spacing = positive(s, "spacing", where);
    const double mult = number(s, "multiplicity", where);
    if (mult < 1 || mult != std::floor(mult)) throw ParameterError("divisor: 'multiplicity' must be a positive integer");
    const double extent = positive(s, "extent", where);
    const double hole = number_or(s, "hole", 0.0, where);
    const double jitter = number_or(s, "jitter", 0.0, where);
    if (hole < 0 || jitter < 0) throw ParameterError("divisor: 'hole' and 'jitter' must be nonnegative");
    if (kind == "square")
      return generate::square_lattice(spacing, static_cast<int>(mult), extent, hole, c.alpha, jitter, c.seed);
    if (kind == "hex") {
      if (jitter > 0) throw ParameterError("divisor: jitter is only supported for square lattices");
      return generate::hex_lattice(spacing, static_cast<int>(mult), extent, hole, c.alpha);
    }
    throw ParameterError("divisor: unknown lattice kind '" + kind + "'");
  }
  if (src == "file") {
    if (!s.contains("path") || !s["path"].is_string()) throw ParameterError("divisor: missing 'path'");
    std::filesystem::path p = s["path"].get<std::string>();
    if (p.is_relative()) p = c.base_dir / p;
    return read_divisor_file(p.string(), c.alpha);
  }
  auto parse_nodes = [&](const json& arr, const char* what) {
    std::vector<Node> nodes;
    if (!arr.is_array()) throw ParameterError(std::string("divisor: '") + what + "' must be a list");
    for (const auto& n : arr) {
      if (!n.is_array() || n.size() != 3 || !n[0].is_number() || !n[1].is_number() || !n[2].is_number_integer())
        throw ParameterError(std::string("divisor: '") + what + "' entries must be [re, im, multiplicity]");
      nodes.push_back({cplx(n[0].get<double>(), n[1].get<double>()), n[2].get<int>()});
    }
    return nodes;
  };
  if (src == "custom") {
    if (!s.contains("nodes")) throw ParameterError("divisor: missing 'nodes'");
    auto nodes = parse_nodes(s["nodes"], "nodes");
    // "distance" moves two nodes apart symmetrically about their midpoint, keeping the
    // direction of the pair.
    if (s.contains("distance")) {
      if (nodes.size() != 2) throw ParameterError("divisor: 'distance' needs exactly two nodes");
      const double d = positive(s, "distance", where);
      const cplx mid = 0.5 * (nodes[0].center + nodes[1].center);
      const cplx dir = nodes[1].center == nodes[0].center ? cplx(1.0) : (nodes[1].center - nodes[0].center) /
                                                                          std::abs(nodes[1].center - nodes[0].center);
      nodes[0].center = mid - 0.5 * d * dir;
      nodes[1].center = mid + 0.5 * d * dir;
    }
    return Divisor(std::move(nodes), c.alpha);
  }
  if (src == "radial-rings") {
    if (!s.contains("rings") || !s["rings"].is_array()) throw ParameterError("divisor: missing 'rings'");
    std::vector<generate::Ring> rings;
    for (const auto& r : s["rings"]) {
      if (!r.is_object()) throw ParameterError("divisor: rings must be objects");
      generate::Ring g;
      g.radius = positive(r, "radius", "ring");
      g.multiplicity = positive_int(r, "multiplicity", "ring");
      g.count = r.contains("count") ? positive_int(r, "count", "ring") : 0;
      rings.push_back(g);
    }
    std::vector<Node> extra;
    if (s.contains("extra")) extra = parse_nodes(s["extra"], "extra");
    return generate::radial_rings(rings, extra, c.alpha, number_or(s, "spacing_fraction", 0.5, where),
                                  number_or(s, "phase", 0.0, where));
  }
  throw ParameterError("divisor: unknown source '" + src + "'");
}

} // namespace fockdiv
