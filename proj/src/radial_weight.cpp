#include "fockdiv/radial_weight.hpp"

#include "fockdiv/errors.hpp"
#include "fockdiv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fockdiv::potential {

RadialWeight build_radial_weight(double q, double a, int grid_n) {
  if (!(q >= 1.0) || !(a >= 1.0)) throw DomainError("q and a must be at least 1");
  if (grid_n < 16) throw ParameterError("radial grid needs at least 16 cells");
  constexpr double pi = std::numbers::pi;
  RadialWeight w;
  w.q = q;
  w.a = a;
  const double L = q + a, c = q + 2 * a;
  auto gamma = [&](double t) { return a / ((c - t) * (c - t)); };
  auto tg = [&](double t) { return t * gamma(t); };

  // Independent of the panel sums below.
  w.b = 2 * pi * quad::adaptive(tg, 0.0, L, 1e-13).value;
  w.b_bound = 2 * pi * L * L / c;
  const double k = 2 * w.b / (pi * L * L);

  // Gamma(s) = int_0^s t gamma(t) dt, cumulative on the grid.
  const int n = grid_n;
  const double dr = L / n;
  std::vector<double> knots(n + 1), G(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) knots[i] = i * dr;
  for (int i = 0; i < n; ++i) G[i + 1] = G[i] + quad::gauss20(tg, knots[i], knots[i + 1]);
  auto Gamma = [&](double s) {
    const int i = std::clamp(static_cast<int>(s / dr), 0, n - 1);
    return G[i] + quad::gauss20(tg, knots[i], s);
  };
  // (r g')(s) = 4 Gamma(s) - 2 b s^2 / (pi L^2)
  auto rdg = [&](double s) { return 4 * Gamma(s) - k * s * s; };
  auto dg = [&](double s) { return s > 0 ? rdg(s) / s : 0.0; };

  // g(r_i) = -int_{r_i}^{L} g'.
  std::vector<double> g(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) g[i] = g[i + 1] - quad::gauss20(dg, knots[i], knots[i + 1]);

  const double q2 = q * q;
  w.min_laplacian_margin = INFINITY;
  for (int i = 1; i <= n; ++i) {
    const double r = knots[i];
    const double hr = q2 * (2 * std::log(r / L) + 1 - (r / L) * (r / L));
    w.r.push_back(r);
    w.gamma.push_back(gamma(r));
    w.g.push_back(g[i]);
    w.dg.push_back(dg(r));
    w.h.push_back(hr);
    w.y.push_back(r * r + g[i] + hr);

    // Delta g = (r g')' / r by a fourth-order central difference of r g'.
    const double e = std::min(dr, 0.25 * r);
    const double d1 = (-rdg(r + 2 * e) + 8 * rdg(r + e) - 8 * rdg(r - e) + rdg(r - 2 * e)) / (12 * e);
    const double lap_g = d1 / r;
    const double rhs_g = 4 * gamma(r) - 2 * k;
    w.ode_residual = std::max(w.ode_residual, std::abs(lap_g - rhs_g));
    const double lhs = 4.0 + lap_g - 4 * q2 / (L * L);
    w.laplacian_lhs.push_back(lhs);
    w.laplacian_rhs.push_back(4 * gamma(r));
    w.min_laplacian_margin = std::min(w.min_laplacian_margin, lhs - 4 * gamma(r));
  }
  w.boundary_value_error = std::abs(w.y.back() - L * L);
  // h'(L) = 0 analytically; the mismatch comes from g'.
  const double dh = q2 * (2 / L - 2 * L / (L * L));
  w.derivative_mismatch = std::abs(2 * L + dg(L) + dh - 2 * L);

  // y - 2 q^2 log r = r^2 + g + q^2 (1 - 2 log L - r^2/L^2): finite at 0, zero slope.
  auto smooth = [&](int i) { return w.y[i] - 2 * q2 * std::log(w.r[i]); };
  double lo = smooth(0), hi = lo;
  for (int i = 1; i < std::min(n, 4); ++i) {
    lo = std::min(lo, smooth(i));
    hi = std::max(hi, smooth(i));
  }
  w.origin_limit_spread = hi - lo;
  const double r1 = w.r[0];
  w.origin_slope = std::abs(2 * r1 + dg(r1) - 2 * q2 * r1 / (L * L));
  return w;
}

} // namespace fockdiv::potential
