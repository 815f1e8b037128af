#include <doctest.h>

#include "fockdiv/commands.hpp"
#include "fockdiv/config.hpp"
#include "fockdiv/errors.hpp"
#include "fockdiv/parallel.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace fockdiv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("fockdiv_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FOCKDIV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

const char* kGeometry = R"({
  "divisor": {"source": "lattice", "spacing": 3.0, "multiplicity": 4, "extent": 9, "jitter": 0.2},
  "window": {"shape": "box", "xmin": -6, "xmax": 6, "ymin": -6, "ymax": 6, "h": 0.05, "collar": 1},
  "margins": [0, 0.5]
})";

} // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(kGeometry);
  CHECK(c.margins.size() == 2);
  CHECK(c.window.has_value());
  CHECK(make_divisor(c).size() > 10);
  CHECK(c.resolved["alpha"] == 1.0);

  try {
    parse_config("{\n  \"divisor\": {\n    \"source\": \"lattice\",\n  }\n  oops\n}");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 4);
  }
  CHECK_THROWS_AS(parse_config(R"({"divisor": {"source": "nowhere"}})"), ParameterError);
  CHECK_THROWS_AS(parse_config(R"({"divisor": {"source": "lattice", "spacing": -1, "multiplicity": 1, "extent": 3}})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_config(R"({"alpha": 0, "divisor": {"source": "custom", "nodes": []}})"), ParameterError);

  const auto two = parse_config(R"({"divisor": {"source": "custom", "nodes": [[-1, 0, 2], [1, 0, 2]], "distance": 5}})");
  const auto d = make_divisor(two);
  CHECK(d[0].center == cplx(-2.5, 0));
  CHECK(d[1].center == cplx(2.5, 0));

  const auto rings = parse_config(
      R"({"divisor": {"source": "radial-rings", "rings": [{"radius": 6, "multiplicity": 16}], "extra": [[20, 0, 1]]}})");
  CHECK(make_divisor(rings).size() > 1);
}

TEST_CASE("divisor file source resolves relative to the config") {
  const auto dir = scratch("file");
  put(dir / "nodes.csv", "re,im,multiplicity\n0,0,4\n3,0,4\n");
  put(dir / "cfg.json", R"({"divisor": {"source": "file", "path": "nodes.csv"},
    "window": {"shape": "disc", "radius": 5, "h": 0.1}})");
  const auto c = load_config(dir / "cfg.json");
  CHECK(make_divisor(c).size() == 2);
  put(dir / "empty.csv", "");
  put(dir / "bad.json", R"({"divisor": {"source": "file", "path": "empty.csv"}})");
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ParseError);
}

TEST_CASE("commands write their tables") {
  const auto dir = scratch("cmds");
  auto c = parse_config(kGeometry);
  auto r = cmd_geometry(c, dir / "geo");
  CHECK(fs::exists(dir / "geo" / "covering.csv"));
  CHECK(slurp(dir / "geo" / "overlap.csv").find("value,grid_value") != std::string::npos);

  auto f = parse_config(R"({
    "divisor": {"source": "lattice", "spacing": 2.0, "multiplicity": 2, "extent": 6},
    "truncation": [20, 30],
    "sweep": {"parameter": "hole", "values": [0, 2]},
    "radial_weight": {"q": 2, "a": 1, "grid_n": 64},
    "plot": true
  })");
  cmd_frame(f, dir / "frame");
  const auto frame_csv = slurp(dir / "frame" / "frame.csv");
  CHECK(frame_csv.find("\nN,A,B,tail_bound\n") != std::string::npos);
  CHECK(slurp(dir / "frame" / "interpolation.csv").find("\nparam,MX,N\n") != std::string::npos);
  CHECK(slurp(dir / "frame" / "radial_weight.csv").find("\nr,gamma,g,h,y,laplacian_lhs,laplacian_rhs\n") !=
        std::string::npos);
  CHECK(slurp(dir / "frame" / "frame.svg").rfind("<svg", 0) == 0);

  auto u = parse_config(R"({
    "divisor": {"source": "lattice", "spacing": 2.0, "multiplicity": 3, "extent": 26, "hole": 2},
    "window": {"shape": "disc", "radius": 24, "h": 0.1, "collar": 2},
    "radii": [6, 8, 10, 12, 14]
  })");
  cmd_uniqueness(u, dir / "uniq");
  const auto red = slurp(dir / "uniq" / "redistribution.csv");
  CHECK(red.find("\nR,I,piR2_half,excess\n") != std::string::npos);
  CHECK(red.find("# verdict = not a zero divisor") != std::string::npos);

  auto bad = parse_config(R"({
    "divisor": {"source": "custom", "nodes": [[0, 0, 25]]},
    "window": {"shape": "disc", "radius": 20, "h": 0.2, "collar": 1},
    "radii": [5, 10]
  })");
  CHECK_THROWS_AS(cmd_uniqueness(bad, dir / "bad"), PreconditionError);

  auto dich = parse_config(R"({
    "divisor": {"source": "custom", "nodes": []},
    "family": {"multiplicities": [1, 4], "kappa": [0.8, 1.0, 1.2]}
  })");
  cmd_dichotomy(dich, dir / "dich");
  CHECK(slurp(dir / "dich" / "dichotomy_summary.csv").find("m_star,min_objective,kappa_at_min") != std::string::npos);
  auto empty = parse_config(R"({"divisor": {"source": "custom", "nodes": []}, "family": {"multiplicities": [], "kappa": [1]}})");
  CHECK_THROWS_AS(cmd_dichotomy(empty, dir / "dich2"), ParameterError);
}

TEST_CASE("outputs do not depend on the worker count") {
  const auto dir = scratch("workers");
  const auto c = parse_config(kGeometry);
  parallel::set_workers(1);
  cmd_geometry(c, dir / "w1");
  auto f = parse_config(R"({
    "divisor": {"source": "lattice", "spacing": 1.8, "multiplicity": 3, "extent": 8, "jitter": 0.1},
    "truncation": [40, 60]
  })");
  cmd_frame(f, dir / "f1");
  parallel::set_workers(7);
  cmd_geometry(c, dir / "w7");
  cmd_frame(f, dir / "f7");
  parallel::set_workers(0);
  for (const char* name : {"overlap.csv", "covering.csv", "disjointness.csv", "divisor.csv"})
    CHECK(slurp(dir / "w1" / name) == slurp(dir / "w7" / name));
  for (const char* name : {"frame.csv", "interpolation.csv"}) CHECK(slurp(dir / "f1" / name) == slurp(dir / "f7" / name));
}

TEST_CASE("command line exit codes") {
  const auto dir = scratch("exit");
  put(dir / "geo.json", kGeometry);
  CHECK(run_cli("geometry --config " + (dir / "geo.json").string() + " --out " + (dir / "a").string() +
                " --workers 2 --seed 5") == 0);
  CHECK(run_cli("geometry --config " + (dir / "geo.json").string() + " --out " + (dir / "b").string() +
                " --workers 3 --seed 5") == 0);
  CHECK(slurp(dir / "a" / "divisor.csv") == slurp(dir / "b" / "divisor.csv"));
  CHECK(slurp(dir / "a" / "overlap.csv").find("\"seed\":5") != std::string::npos);

  put(dir / "broken.json", "{ \"divisor\": ");
  CHECK(run_cli("geometry --config " + (dir / "broken.json").string()) == 2);
  CHECK(run_cli("geometry --config " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("nonsense --config " + (dir / "geo.json").string()) == 2);
  put(dir / "nowin.json", R"({"divisor": {"source": "custom", "nodes": [[0, 0, 1]]}})");
  CHECK(run_cli("geometry --config " + (dir / "nowin.json").string() + " --out " + (dir / "c").string()) == 2);
  put(dir / "huge.json", R"({"divisor": {"source": "lattice", "spacing": 1, "multiplicity": 50, "extent": 60},
    "truncation": [400000]})");
  CHECK(run_cli("frame --config " + (dir / "huge.json").string() + " --out " + (dir / "d").string()) == 3);
}
