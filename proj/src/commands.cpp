#include "fockdiv/commands.hpp"

#include "fockdiv/csv.hpp"
#include "fockdiv/errors.hpp"
#include "fockdiv/fock.hpp"
#include "fockdiv/frame.hpp"
#include "fockdiv/geometry.hpp"
#include "fockdiv/potential.hpp"
#include "fockdiv/radial_weight.hpp"
#include "fockdiv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

namespace fockdiv {

namespace fs = std::filesystem;
using csv::format;

namespace {

constexpr const char* kVersion = "fockdiv 1.0";

void provenance(csv::Table& t, const Config& c, const std::string& command) {
  t.note("generator", kVersion);
  t.note("command", command);
  if (!c.source.empty()) t.note("config", c.source.filename().string());
  t.note("resolved", c.resolved.dump());
}

fs::path prepare(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ResourceError("cannot create output directory '" + out.string() + "': " + ec.message());
  return out;
}

fs::path emit(CommandResult& r, const csv::Table& t, const fs::path& dir, const std::string& name) {
  const auto p = dir / name;
  t.write_file(p.string());
  r.files.push_back(p);
  return p;
}

const Region& need_window(const Config& c, const char* cmd) {
  if (!c.window) throw ParameterError(std::string(cmd) + " needs a 'window' section");
  return *c.window;
}

std::vector<int> truncations(const Config& c, const Divisor& x) {
  if (!c.truncation.empty()) return c.truncation;
  return {fock::recommended_truncation(x.normalized())};
}

const char* mode_name(CoverMode m) { return m == CoverMode::Expand ? "expand" : "shrink"; }

} // namespace

CommandResult cmd_geometry(const Config& c, const fs::path& out_dir) {
  CommandResult r;
  const auto dir = prepare(out_dir);
  const Divisor x = make_divisor(c);
  const Region& w = need_window(c, "geometry");

  {
    std::ofstream f(dir / "divisor.csv", std::ios::binary);
    if (!f) throw ResourceError("cannot write divisor.csv");
    write_divisor_csv(f, x);
    r.files.push_back(dir / "divisor.csv");
  }

  const auto ov = overlap_constant(x, w);
  csv::Table to({"value", "grid_value", "candidate_value", "argmax_re", "argmax_im"});
  provenance(to, c, "geometry");
  to.note("window", w.describe());
  to.row({format((long long)ov.value), format((long long)ov.grid_value), format((long long)ov.candidate_value),
          format(ov.argmax.real()), format(ov.argmax.imag())});
  emit(r, to, dir, "overlap.csv");
  r.summary.push_back("nodes " + std::to_string(x.size()) + ", overlap constant (lower bound) " +
                      std::to_string(ov.value));

  csv::Table tc({"C", "mode", "margin", "worst_re", "worst_im", "resolution", "covered", "empty_system"});
  provenance(tc, c, "geometry");
  tc.note("window", w.describe());
  csv::Table td({"C", "mode", "ok", "i", "j", "violation", "empty_system"});
  provenance(td, c, "geometry");
  for (double C : c.margins) {
    for (CoverMode m : {CoverMode::Expand, CoverMode::Shrink}) {
      const auto cm = covering_margin(x, C, w, m);
      tc.row({format(C), mode_name(m), format(cm.margin), format(cm.worst_z.real()), format(cm.worst_z.imag()),
              format(cm.resolution), cm.covered() ? "1" : "0", cm.empty_system ? "1" : "0"});
      const auto dj = disjointness_check(x, C, m);
      td.row({format(C), mode_name(m), dj.ok ? "1" : "0", format((long long)dj.i), format((long long)dj.j),
              format(dj.violation), dj.empty_system ? "1" : "0"});
      r.summary.push_back("C=" + format(C) + " " + mode_name(m) + ": margin " + format(cm.margin) +
                          (cm.covered() ? " (covered)" : "") + ", disjoint " + (dj.ok ? "yes" : "no"));
    }
  }
  emit(r, tc, dir, "covering.csv");
  emit(r, td, dir, "disjointness.csv");
  return r;
}

CommandResult cmd_frame(const Config& c, const fs::path& out_dir) {
  CommandResult r;
  const auto dir = prepare(out_dir);
  const Divisor x = make_divisor(c);
  const auto Ns = truncations(c, x);

  csv::Table tf({"N", "A", "B", "tail_bound"});
  provenance(tf, c, "frame");
  tf.note("test_space", "span of the first N basis functions; A is an upper estimate of the lower frame bound, "
                        "B a lower estimate of the upper bound");
  svg::Series sa{"A", {}, {}}, sb{"B", {}, {}};
  for (int N : Ns) {
    const auto f = frame::frame_bounds(x, N);
    tf.row({format((long long)N), format(f.A), format(f.B), format(f.tail_bound)});
    sa.x.push_back(N);
    sa.y.push_back(f.A);
    sb.x.push_back(N);
    sb.y.push_back(f.B);
    r.summary.push_back("N=" + std::to_string(N) + " A=" + format(f.A) + " B=" + format(f.B) + " (" + f.method + ")");
  }
  emit(r, tf, dir, "frame.csv");

  auto mx_of = [](const Divisor& d, int N) {
    try {
      return frame::interpolation_constant(d, N);
    } catch (const NotInterpolatingError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  csv::Table ti({"param", "MX", "N"});
  provenance(ti, c, "frame");
  ti.note("MX", "inf when the restriction operator is not onto at this truncation");
  svg::Plot pm{"interpolation constant", c.sweep ? c.sweep->at("parameter").get<std::string>() : "N", "M_X", true, {}};
  if (c.sweep) {
    const std::string key = c.sweep->at("parameter").get<std::string>();
    ti.note("param", key);
    csv::Table ts({"param", "N", "A", "B", "tail_bound"});
    provenance(ts, c, "frame");
    ts.note("param", key);
    std::map<int, svg::Series> curves;
    for (double v : c.sweep->at("values")) {
      const auto spec = override_field(c.divisor, key, v);
      const Divisor xs = make_divisor(c, &spec);
      for (int N : Ns) {
        const auto f = frame::frame_bounds(xs, N);
        ts.row({format(v), format((long long)N), format(f.A), format(f.B), format(f.tail_bound)});
        const double M = mx_of(xs, N);
        ti.row({format(v), format(M), format((long long)N)});
        auto& s = curves[N];
        s.label = "N=" + std::to_string(N);
        s.x.push_back(v);
        s.y.push_back(M);
      }
    }
    emit(r, ts, dir, "frame_sweep.csv");
    for (auto& [n, s] : curves) pm.series.push_back(s);
  } else {
    ti.note("param", "N");
    svg::Series s{"M_X", {}, {}};
    for (int N : Ns) {
      const double M = mx_of(x, N);
      ti.row({format((long long)N), format(M), format((long long)N)});
      s.x.push_back(N);
      s.y.push_back(M);
    }
    pm.series.push_back(s);
  }
  emit(r, ti, dir, "interpolation.csv");

  if (c.radial_weight) {
    const auto& rw = *c.radial_weight;
    if (!rw.contains("q") || !rw.contains("a") || !rw["q"].is_number() || !rw["a"].is_number() ||
        !rw["grid_n"].is_number_integer())
      throw ParameterError("radial_weight: needs numeric 'q', 'a' and integer 'grid_n'");
    const auto w = potential::build_radial_weight(rw["q"].get<double>(), rw["a"].get<double>(), rw["grid_n"].get<int>());
    csv::Table tr({"r", "gamma", "g", "h", "y", "laplacian_lhs", "laplacian_rhs"});
    provenance(tr, c, "frame");
    tr.note("b", format(w.b));
    tr.note("b_bound", format(w.b_bound));
    tr.note("boundary_value_error", format(w.boundary_value_error));
    tr.note("derivative_mismatch", format(w.derivative_mismatch));
    tr.note("ode_residual", format(w.ode_residual));
    tr.note("min_laplacian_margin", format(w.min_laplacian_margin));
    for (std::size_t i = 0; i < w.r.size(); ++i)
      tr.row(std::vector<double>{w.r[i], w.gamma[i], w.g[i], w.h[i], w.y[i], w.laplacian_lhs[i], w.laplacian_rhs[i]});
    emit(r, tr, dir, "radial_weight.csv");
    r.summary.push_back("radial weight q=" + format(w.q) + " a=" + format(w.a) + ": b=" + format(w.b) +
                        " (bound " + format(w.b_bound) + "), min Laplacian margin " + format(w.min_laplacian_margin));
  }

  if (c.plot) {
    svg::Plot pf{"frame bounds", "N", "bound", false, {sa, sb}};
    svg::write_file(pf, (dir / "frame.svg").string());
    svg::write_file(pm, (dir / "interpolation.svg").string());
    r.files.push_back(dir / "frame.svg");
    r.files.push_back(dir / "interpolation.svg");
  }
  return r;
}

CommandResult cmd_uniqueness(const Config& c, const fs::path& out_dir) {
  CommandResult r;
  const auto dir = prepare(out_dir);
  const Divisor x = make_divisor(c);
  const Region& w = need_window(c, "uniqueness");
  if (c.radii.empty()) throw ParameterError("uniqueness needs a 'radii' list");
  const auto cert = potential::uniqueness_certificate(x, w, c.radii);

  csv::Table t({"R", "I", "piR2_half", "excess"});
  provenance(t, c, "uniqueness");
  t.note("window", w.describe());
  t.note("area_K", format(cert.area_K));
  t.note("area_K_error", format(cert.area_K_error));
  t.note("R0", format(cert.R0));
  t.note("slope", format(cert.slope));
  t.note("required_slope", format(cert.required_slope));
  t.note("verdict", cert.verdict);
  svg::Series se{"I - pi R^2/2", {}, {}}, sbm{"(m(K)+1) log R", {}, {}};
  for (const auto& row : cert.table) {
    t.row(std::vector<double>{row.R, row.I, row.pi_R2_half, row.excess});
    se.x.push_back(row.R);
    se.y.push_back(row.excess);
    sbm.x.push_back(row.R);
    sbm.y.push_back(row.benchmark);
  }
  emit(r, t, dir, "redistribution.csv");
  r.summary.push_back("m(K) = " + format(cert.area_K) + ", R0 = " + format(cert.R0) + ", slope " +
                      format(cert.slope) + " (needs " + format(cert.required_slope) + ")");
  r.summary.push_back("verdict: " + cert.verdict);
  if (c.plot) {
    svg::Plot p{"redistribution excess", "R", "excess", false, {se, sbm}};
    svg::write_file(p, (dir / "redistribution.svg").string());
    r.files.push_back(dir / "redistribution.svg");
  }
  return r;
}

DichotomyParams dichotomy_params(const nlohmann::json& f) {
  DichotomyParams p;
  if (!f.contains("multiplicities") || !f["multiplicities"].is_array() || f["multiplicities"].empty())
    throw ParameterError("family: 'multiplicities' must be a nonempty list");
  for (const auto& m : f["multiplicities"]) {
    if (!m.is_number_integer() || m.get<int>() < 1) throw ParameterError("family: multiplicities must be positive integers");
    p.multiplicities.push_back(m.get<int>());
  }
  if (!f.contains("kappa")) throw ParameterError("family: missing 'kappa'");
  const auto& k = f["kappa"];
  if (k.is_array()) {
    for (const auto& v : k) {
      if (!v.is_number()) throw ParameterError("family: kappa entries must be numbers");
      p.kappas.push_back(v.get<double>());
    }
  } else if (k.is_object() && k.contains("from") && k.contains("to") && k.contains("step")) {
    const double a = k["from"].get<double>(), b = k["to"].get<double>(), s = k["step"].get<double>();
    if (!(s > 0)) throw ParameterError("family: kappa step must be positive");
    const int n = static_cast<int>(std::floor((b - a) / s + 1e-9));
    for (int i = 0; i <= n; ++i) p.kappas.push_back(a + i * s);
  } else {
    throw ParameterError("family: 'kappa' must be a list or {from, to, step}");
  }
  if (p.kappas.empty()) throw ParameterError("family: empty kappa range");
  for (double v : p.kappas)
    if (!(v > 0)) throw ParameterError("family: kappa values must be positive");
  p.frame_pad = f.value("frame_pad", p.frame_pad);
  p.patch_pad = f.value("patch_pad", p.patch_pad);
  return p;
}

std::vector<DichotomyPoint> dichotomy_sweep(const DichotomyParams& p) {
  if (p.multiplicities.empty() || p.kappas.empty()) throw ParameterError("dichotomy family is empty");
  std::vector<DichotomyPoint> out;
  for (int m : p.multiplicities) {
    for (double kappa : p.kappas) {
      DichotomyPoint d;
      d.m_star = m;
      d.kappa = kappa;
      d.spacing = kappa * 2.0 * std::sqrt(double(m));
      const double s = d.spacing;
      d.N_A = static_cast<int>(std::ceil((s + p.frame_pad) * (s + p.frame_pad)));
      const double extent = std::sqrt(double(d.N_A)) + 2.0 * std::sqrt(double(m)) + p.patch_pad;
      const Divisor big = generate::square_lattice(s, m, extent);
      d.A = frame::frame_bounds(big, d.N_A).A;

      std::vector<Node> patch;
      for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) patch.push_back({cplx(i * s, j * s), m});
      const Divisor small(patch, 1.0);
      d.N_M = fock::recommended_truncation(small);
      try {
        d.MX = frame::interpolation_constant(small, d.N_M);
      } catch (const NotInterpolatingError&) {
        d.MX = std::numeric_limits<double>::infinity();
      }
      d.objective = std::max(d.A > 0 ? 1.0 / d.A : std::numeric_limits<double>::infinity(), d.MX);
      out.push_back(d);
    }
  }
  return out;
}

std::vector<DichotomyMin> dichotomy_minima(const std::vector<DichotomyPoint>& pts) {
  std::vector<DichotomyMin> out;
  for (const auto& d : pts) {
    if (out.empty() || out.back().m_star != d.m_star) out.push_back({d.m_star, d.objective, d.kappa});
    else if (d.objective < out.back().objective) out.back() = {d.m_star, d.objective, d.kappa};
  }
  return out;
}

CommandResult cmd_dichotomy(const Config& c, const fs::path& out_dir) {
  CommandResult r;
  if (!c.family) throw ParameterError("dichotomy needs a 'family' section");
  const auto params = dichotomy_params(*c.family);
  const auto dir = prepare(out_dir);
  const auto pts = dichotomy_sweep(params);

  csv::Table t({"m_star", "kappa", "spacing", "A", "inv_A", "MX", "objective", "N_A", "N_M"});
  provenance(t, c, "dichotomy");
  t.note("objective", "max(1/A, MX); MX = inf when the 3x3 patch is not interpolating");
  for (const auto& d : pts)
    t.row({format((long long)d.m_star), format(d.kappa), format(d.spacing), format(d.A),
           format(d.A > 0 ? 1.0 / d.A : INFINITY), format(d.MX), format(d.objective), format((long long)d.N_A),
           format((long long)d.N_M)});
  emit(r, t, dir, "dichotomy.csv");

  const auto mins = dichotomy_minima(pts);
  csv::Table ts({"m_star", "min_objective", "kappa_at_min"});
  provenance(ts, c, "dichotomy");
  svg::Series s{"min over kappa of max(1/A, M_X)", {}, {}};
  for (const auto& m : mins) {
    ts.row({format((long long)m.m_star), format(m.objective), format(m.kappa)});
    s.x.push_back(m.m_star);
    s.y.push_back(m.objective);
    r.summary.push_back("m*=" + std::to_string(m.m_star) + ": min max(1/A, M_X) = " + format(m.objective) +
                        " at kappa " + format(m.kappa));
  }
  emit(r, ts, dir, "dichotomy_summary.csv");
  if (c.plot) {
    std::map<int, svg::Series> by_m;
    for (const auto& d : pts) {
      auto& se = by_m[d.m_star];
      se.label = "m*=" + std::to_string(d.m_star);
      se.x.push_back(d.kappa);
      se.y.push_back(d.objective);
    }
    svg::Plot p{"dichotomy trade-off", "kappa", "max(1/A, M_X)", true, {}};
    for (auto& [m, se] : by_m) p.series.push_back(se);
    svg::write_file(p, (dir / "dichotomy.svg").string());
    r.files.push_back(dir / "dichotomy.svg");
  }
  return r;
}

} // namespace fockdiv
