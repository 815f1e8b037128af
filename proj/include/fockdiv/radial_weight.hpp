#pragma once

#include <string>
#include <vector>

namespace fockdiv::potential {

// Radial weight y_{q,a}: |z|^2 + g + h on D(q+a), |z|^2 outside, with
//   gamma(t) = a / (q + 2a - t)^2,  b = int_{D(q+a)} gamma(|z|) dm,
//   Delta g = 4 gamma - 4 b / (pi (q+a)^2), g = 0 on |z| = q+a,
//   h = q^2 [log|z/(q+a)|^2 + 1 - |z/(q+a)|^2].
struct RadialWeight {
  double q = 0.0, a = 0.0;
  double b = 0.0;
  double b_bound = 0.0;  // 2 pi (q+a)^2 / (q + 2a)

  // Grid r_i = i (q+a) / n, i = 1..n.
  std::vector<double> r, gamma, g, dg, h, y;
  std::vector<double> laplacian_lhs;  // Delta y off the origin; Delta g from finite differences
  std::vector<double> laplacian_rhs;  // 4 gamma

  double boundary_value_error = 0.0;  // |y(q+a) - (q+a)^2|
  double derivative_mismatch = 0.0;   // |y'(q+a-) - 2 (q+a)|
  double ode_residual = 0.0;          // max |Delta g (differenced) - RHS|
  double origin_limit_spread = 0.0;   // spread of y - 2 q^2 log r over the first grid cells
  double origin_slope = 0.0;          // |d/dr (y - 2 q^2 log r)| at the first grid point
  double min_laplacian_margin = 0.0;  // min (lhs - rhs)

  bool mass_bound_holds() const { return b <= b_bound * (1 + 1e-14); }
};

RadialWeight build_radial_weight(double q, double a, int grid_n = 4096);

} // namespace fockdiv::potential
