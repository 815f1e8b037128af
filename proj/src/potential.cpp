#include "fockdiv/potential.hpp"

#include "fockdiv/errors.hpp"
#include "fockdiv/geometry.hpp"
#include "fockdiv/parallel.hpp"
#include "fockdiv/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fockdiv::potential {

namespace {
constexpr double kPi = std::numbers::pi;

// Angular measure of {|z| = rho} ∩ D(c, r), |c| = d.
double arc(double rho, double d, double r) {
  if (rho + d <= r) return 2 * kPi;
  if (rho >= d + r || rho <= d - r) return 0.0;
  const double c = (rho * rho + d * d - r * r) / (2 * rho * d);
  return 2 * std::acos(std::clamp(c, -1.0, 1.0));
}
} // namespace

double disc_log_integral(cplx lambda, double r, double R, bool force_quadrature) {
  if (!(R > 0.0)) throw DomainError("R must be positive");
  if (!(r > 0.0)) throw DomainError("disc radius must be positive");
  const double d = std::abs(lambda);
  if (d - r >= R) return 0.0;
  if (!force_quadrature && d > r && d + r <= R) return kPi * r * r * std::log(R / d);
  // Polar shells about the origin.
  const double lo = std::max(0.0, d - r), hi = std::min(R, d + r);
  auto f = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    return std::log(R / rho) * rho * arc(rho, d, r);
  };
  const std::array<double, 1> brk{r - d};
  return quad::adaptive_split(f, lo, hi, brk, 1e-11).value;
}

double redistribution_integral(const Divisor& x, double R) {
  if (!(R > 0.0)) throw DomainError("R must be positive");
  const Divisor xn = x.normalized();
  std::vector<double> part(xn.size());
  parallel::for_each_index(xn.size(), [&](std::size_t i) {
    part[i] = disc_log_integral(xn[i].center, std::sqrt(double(xn[i].multiplicity)), R);
  });
  double s = 0.0;
  for (double p : part) s += p;
  return s;
}

UniquenessCertificate uniqueness_certificate(const Divisor& x, const Region& w,
                                             std::span<const double> R_list) {
  if (R_list.empty()) throw ParameterError("R list is empty");
  const double sa = std::sqrt(x.alpha());
  const Divisor xn = x.normalized();
  const Region wn = w.scaled(sa);
  std::vector<double> Rs(R_list.begin(), R_list.end());
  std::sort(Rs.begin(), Rs.end());
  for (double& R : Rs) {
    if (!(R > 0.0)) throw DomainError("R must be positive");
    R *= sa;
  }
  if (Rs.back() > wn.inner_radius() * (1 + 1e-12))
    throw ParameterError("largest R exceeds the window interior");

  const auto discs = DiscSystem::from(xn, 0.0, CoverMode::Expand);
  const auto K = uncovered_set(discs, wn);
  if (!K.compact)
    throw PreconditionError("discs do not cover the window outside a compact set (uncovered point at |z| = " +
                            std::to_string(K.max_abs / sa) + ")");

  UniquenessCertificate c;
  const double h = wn.h(), cell = h * h;
  c.area_K = K.area;
  c.max_abs_K = K.max_abs;
  // Perimeter-sized grid uncertainty: one cell per uncovered point is a loose cap.
  c.area_K_error = std::max(cell, std::sqrt(K.area / cell) * 4 * cell);

  // Multiply covered points by radius.
  const auto count = count_field(discs, wn);
  std::vector<double> radii;
  for (std::size_t i = 0; i < count.size(); ++i) {
    if (count[i] < 2) continue;
    const cplx z = grid_point(wn, i);
    if (!wn.in_interior(z)) continue;
    radii.push_back(std::abs(z));
  }
  std::sort(radii.begin(), radii.end());
  const double need = c.area_K + 1.0;
  const std::size_t k = static_cast<std::size_t>(std::ceil(need / cell));
  if (k == 0 || k > radii.size())
    throw PreconditionError("multiply covered area inside the window is below m(K) + 1");
  c.R0 = radii[k - 1];
  c.area_E_R0 = double(k) * cell;

  for (double R : Rs) {
    CurveRow row;
    row.R = R;
    row.I = redistribution_integral(xn, R);
    row.pi_R2_half = 0.5 * kPi * R * R;
    row.excess = row.I - row.pi_R2_half;
    row.benchmark = (c.area_K + 1.0) * std::log(R);
    c.table.push_back(row);
  }
  // Back to the caller's units for reporting radii.
  c.R0 /= sa;
  c.max_abs_K /= sa;
  for (auto& row : c.table) row.R /= sa;

  const std::size_t n = c.table.size(), start = n / 2;
  if (n - start >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = start; i < n; ++i) {
      mx += std::log(c.table[i].R * sa);
      my += c.table[i].excess;
    }
    mx /= double(n - start);
    my /= double(n - start);
    double sxy = 0, sxx = 0;
    for (std::size_t i = start; i < n; ++i) {
      const double dx = std::log(c.table[i].R * sa) - mx;
      sxy += dx * (c.table[i].excess - my);
      sxx += dx * dx;
    }
    c.slope = sxx > 0 ? sxy / sxx : 0.0;
  }
  c.required_slope = kSlopeFraction * (c.area_K + 1.0);
  c.grows = n - start >= 2 && c.slope >= c.required_slope;
  c.verdict = c.grows ? "not a zero divisor (certificate grows)" : "inconclusive";
  return c;
}

double weight_v(const Divisor& x, cplx z) {
  const double sa = std::sqrt(x.alpha());
  const cplx zn = z * sa;
  double v = 0.0;
  for (const auto& nd : x.nodes()) {
    const double m = nd.multiplicity;
    const double t = std::norm(zn - nd.center * sa) / m;
    if (t >= 1.0) continue;
    if (t == 0.0) return -std::numeric_limits<double>::infinity();
    v += m * (std::log(t) + 1.0 - t);
  }
  return v;
}

PsiReport verify_psi_laplacian(const Divisor& x, const Region& w) {
  const double sa = std::sqrt(x.alpha());
  const Divisor xn = x.normalized();
  const Region wn = w.scaled(sa);
  const double h = wn.h();
  const double eps = std::numeric_limits<double>::epsilon();
  const int mmax = xn.empty() ? 1 : xn.max_multiplicity();
  PsiReport rep;
  // The stencil error near a center scales like m h^2 / rho^4; exclude until it is <= 1/4.
  rep.exclusion_radius = std::max(10.0 * h, std::pow(8.0 * mmax * h * h, 0.25));
  const double psi_scale = std::pow(wn.outer_radius(), 2) + 1.0;
  if (64.0 * eps * psi_scale / (h * h) > 0.5)
    throw ParameterError("grid spacing too small for the five-point stencil in double precision");

  auto psi = [&](double px, double py) {
    const cplx z(px, py);
    return std::norm(z) + weight_v(xn, z);
  };

  const auto& rows = wn.rows();
  struct Acc {
    PsiReport r;
  };
  std::vector<Acc> acc(rows.size());  // one per row, merged in order
  parallel::for_each_index(rows.size(), [&](std::size_t ri) {
    auto& a = acc[ri].r;
    const auto& row = rows[ri];
    for (std::size_t i = 0; i < row.n; ++i) {
      const double px = wn.x(row, i), py = row.y;
      const cplx z(px, py);
      bool ok = wn.contains(z + cplx(h, 0)) && wn.contains(z - cplx(h, 0)) && wn.contains(z + cplx(0, h)) &&
                wn.contains(z - cplx(0, h));
      int count = 0;
      double bound = 0.0;
      for (std::size_t j = 0; ok && j < xn.size(); ++j) {
        const double m = xn[j].multiplicity, r = std::sqrt(m);
        const double rho = std::abs(z - xn[j].center);
        if (rho < rep.exclusion_radius || std::abs(rho - r) <= h * (1 + 1e-9)) {
          ok = false;
          break;
        }
        if (rho < r) {
          ++count;
          bound += 2.0 * 2.0 * m * h * h / std::pow(rho, 4);
        }
      }
      if (!ok) {
        ++a.excluded;
        continue;
      }
      const double c0 = psi(px, py);
      const double lap = (psi(px + h, py) + psi(px - h, py) + psi(px, py + h) + psi(px, py - h) - 4 * c0) / (h * h);
      const double expect = 4.0 - 4.0 * count;
      const double err = std::abs(lap - expect);
      const double tol = bound + 64.0 * eps * (std::abs(c0) + psi_scale) / (h * h) + 1e-12;
      ++a.checked;
      (count > 0 ? a.inside : a.outside) += 1;
      if (err > a.max_error) a.max_error = err;
      if (err / tol > a.max_ratio) {
        a.max_ratio = err / tol;
        a.worst = z;
      }
    }
  });
  for (const auto& a : acc) {
    rep.checked += a.r.checked;
    rep.excluded += a.r.excluded;
    rep.inside += a.r.inside;
    rep.outside += a.r.outside;
    rep.max_error = std::max(rep.max_error, a.r.max_error);
    if (a.r.max_ratio > rep.max_ratio) {
      rep.max_ratio = a.r.max_ratio;
      rep.worst = a.r.worst / sa;
    }
  }
  if (rep.checked == 0) throw ParameterError("no admissible grid points for the Laplacian check");
  rep.passes = rep.max_ratio <= 1.0;
  rep.exclusion_radius /= sa;
  return rep;
}

} // namespace fockdiv::potential
