#pragma once

#include <span>
#include <vector>

// Incomplete-gamma tails sigma_k(x) = (1/k!) int_0^x y^k e^{-y} dy and
// omega_k(x) = e^{-x} sum_{s<=k} x^s/s!, plus the radial profile phi_m.
namespace fockdiv::specfun {

double omega(int k, double x);
double sigma(int k, double x);

// Natural logarithms of the same quantities; finite (down to about -1e300) where the
// plain values underflow.
double log_omega(int k, double x);
double log_sigma(int k, double x);

// Independent route: adaptive Gauss-Kronrod on the defining integral.
double sigma_quadrature(int k, double x, double rel_tol = 1e-12);

struct TailValue {
  int k = 0;
  double x = 0.0;
  double sigma = 0.0;
  double omega = 1.0;
};

TailValue tail(int k, double x);

double phi(double m, double t);

struct RadialProfile {
  double m = 0.0;
  std::vector<double> radii;
  std::vector<double> values;

  // Adjacent values decrease below sqrt(m) and increase above it.
  bool monotone() const;
};

RadialProfile radial_profile(double m, std::span<const double> radii);

struct TailLowerBound {
  double epsilon = 0.0;  // minimum over the scanned range
  int k0 = 0;            // first index scanned
  int k_argmin = 0;
  double first_half_min = 0.0;
  double second_half_min = 0.0;
};

// The second-half minimum must stay above this fraction of the first-half minimum.
inline constexpr double kStabilityFraction = 0.5;

// min over k0 <= k <= k_max of sigma_k(k - t sqrt k), k0 the first k with k - t sqrt k > 0.
TailLowerBound verify_tail_lower_a(double t, int k_max);

// min over 0 <= k <= k_max of omega_k(k + t sqrt k).
TailLowerBound verify_tail_lower_b(double t, int k_max);

enum class RatioCriterion {
  // sigma_k(m - t sqrt m) <= eps sigma_k(m) for every t^2 <= m <= k <= k_max.
  Integrated,
  // Density ratio (y - t sqrt y)^k e^{-(y - t sqrt y)} <= eps y^k e^{-y} at integer y = m,
  // the sufficient condition the integrated form is derived from.
  Pointwise,
};

struct TailRatio {
  double t = 0.0;
  double proof_bound = 0.0;  // sqrt(2 log(1/eps))
  double cap = 0.0;          // 2 * proof_bound
};

// Smallest t on the grid {0, step, 2 step, ...} for which the criterion holds for all
// t^2 <= m <= k <= k_max.
TailRatio find_tail_ratio_t(double epsilon, int k_max, double t_step = 0.05,
                            RatioCriterion criterion = RatioCriterion::Integrated);

// Whether the criterion holds at a given t.
bool tail_ratio_holds(double epsilon, int k_max, double t,
                      RatioCriterion criterion = RatioCriterion::Integrated);

} // namespace fockdiv::specfun
