#pragma once

#include "fockdiv/divisor.hpp"
#include "fockdiv/region.hpp"

#include <span>
#include <string>
#include <vector>

// Laplacian convention throughout: Delta log|z| = 2 pi delta_0, Delta |z|^2 = 4.
// All functions work in alpha = 1 coordinates (z -> sqrt(alpha) z); discs are
// D(lambda, sqrt m_lambda) there.
namespace fockdiv::potential {

// int_{D(lambda, r) ∩ D(R)} log(R/|z|) dm(z). Closed form pi r^2 log(R/|lambda|) when the
// disc avoids 0 and lies in D(R); radial quadrature otherwise (or when forced).
double disc_log_integral(cplx lambda, double r, double R, bool force_quadrature = false);

// I(R) = sum over nodes of disc_log_integral(lambda, sqrt m, R), alpha = 1 coordinates.
double redistribution_integral(const Divisor& x, double R);

struct CurveRow {
  double R = 0.0;
  double I = 0.0;
  double pi_R2_half = 0.0;
  double excess = 0.0;     // I - pi R^2 / 2
  double benchmark = 0.0;  // (m(K) + 1) log R
};

inline constexpr double kSlopeFraction = 0.8;

struct UniquenessCertificate {
  double area_K = 0.0;         // uncovered area inside the window interior
  double area_K_error = 0.0;   // one grid cell per boundary-adjacent point, coarse bound
  double max_abs_K = 0.0;
  double R0 = 0.0;             // area(E ∩ D(R0)) >= m(K) + 1
  double area_E_R0 = 0.0;
  std::vector<CurveRow> table;
  double slope = 0.0;          // least squares slope of excess vs log R, top half of R list
  double required_slope = 0.0; // kSlopeFraction * (m(K) + 1)
  bool grows = false;
  std::string verdict;
};

// Radii are in the divisor's own units. Throws PreconditionError when the discs leave a
// non-compact uncovered set in W, or E is too small inside W to fix R0.
UniquenessCertificate uniqueness_certificate(const Divisor& x, const Region& w,
                                             std::span<const double> R_list);

// v(z) = sum m [log(|z - lambda|^2 / m) + 1 - |z - lambda|^2 / m] over discs containing z.
// -inf at a node center.
double weight_v(const Divisor& x, cplx z);

struct PsiReport {
  std::size_t checked = 0;
  std::size_t excluded = 0;
  std::size_t inside = 0;   // checked points covered by at least one disc
  std::size_t outside = 0;
  double max_error = 0.0;   // max |Delta_h psi - (4 - 4 count)|
  double max_ratio = 0.0;   // max error / tolerance
  cplx worst{};
  double exclusion_radius = 0.0;
  bool passes = false;
};

// Five-point Laplacian of psi = |z|^2 + v on the grid of W, compared with 4 - 4 * count,
// count = number of discs containing the point. Points near centers or disc boundaries
// are excluded.
PsiReport verify_psi_laplacian(const Divisor& x, const Region& w);

} // namespace fockdiv::potential
