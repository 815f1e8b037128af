#include "fockdiv/specfun.hpp"

#include "fockdiv/errors.hpp"
#include "fockdiv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace fockdiv::specfun {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSeriesTol = 1e-17;

void check_args(int k, double x) {
  if (k < 0) throw DomainError("tail index k must be nonnegative");
  if (!std::isfinite(x) || x < 0.0) throw DomainError("tail argument x must be finite and nonnegative");
}

// lgamma(s+1) - (s log s - s + log(2 pi s)/2), valid to double precision for s >= 10.
double stirling_correction(double s) {
  const double r = 1.0 / s, r2 = r * r;
  return r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 / 1680)));
}

// log of the Poisson weight x^s e^{-x} / s!, x > 0.
double log_term(int s, double x) {
  if (s == 0) return -x;
  if (s < 10) return s * std::log(x) - x - std::lgamma(s + 1.0);
  const double ds = s, d = x - ds;
  // log1p keeps digits near the peak; far from it the plain logs are exact enough.
  const double lr = std::abs(d) < 0.5 * ds ? std::log1p(d / ds) : std::log(x) - std::log(ds);
  return ds * lr - d - 0.5 * std::log(2.0 * std::numbers::pi * ds) -
         stirling_correction(ds);
}

// log sum_{s=lo}^{hi} x^s e^{-x}/s!, hi may be "infinite" (INT_MAX); x > 0, lo <= hi.
double log_poisson_sum(int lo, int hi, double x) {
  // Terms rise until s = floor(x) and fall afterwards.
  const double fx = std::floor(x);
  int p = fx < lo ? lo : (fx > hi ? hi : static_cast<int>(fx));
  const double lp = log_term(p, x);
  double sum = 1.0;
  // downward: t_{s} / t_{s+1} = (s+1)/x
  double r = 1.0;
  for (int s = p - 1; s >= lo; --s) {
    r *= (s + 1) / x;
    sum += r;
    const double q = s / x;
    if (q < 1.0 && r * q / (1.0 - q) < kSeriesTol * sum) break;
  }
  // upward: t_{s} / t_{s-1} = x/s
  r = 1.0;
  for (int s = p + 1; s <= hi && s > 0; ++s) {
    r *= x / s;
    sum += r;
    const double q = x / (s + 1.0);
    if (q < 1.0 && r * q / (1.0 - q) < kSeriesTol * sum) break;
    if (r == 0.0) break;
  }
  return lp + std::log(sum);
}

constexpr int kInfIndex = std::numeric_limits<int>::max() - 1;

// The lower tail (sigma) is summed directly when x < k + 1, the upper (omega) otherwise.
bool sigma_is_direct(int k, double x) { return x < k + 1.0; }

} // namespace

double log_omega(int k, double x) {
  check_args(k, x);
  if (x == 0.0) return 0.0;
  if (sigma_is_direct(k, x)) return std::log1p(-std::exp(log_poisson_sum(k + 1, kInfIndex, x)));
  return std::min(0.0, log_poisson_sum(0, k, x));
}

double log_sigma(int k, double x) {
  check_args(k, x);
  if (x == 0.0) return kNegInf;
  if (sigma_is_direct(k, x)) return std::min(0.0, log_poisson_sum(k + 1, kInfIndex, x));
  return std::log1p(-std::exp(log_poisson_sum(0, k, x)));
}

double omega(int k, double x) {
  check_args(k, x);
  if (x == 0.0) return 1.0;
  if (sigma_is_direct(k, x)) return 1.0 - sigma(k, x);
  return std::min(1.0, std::exp(log_poisson_sum(0, k, x)));
}

double sigma(int k, double x) {
  check_args(k, x);
  if (x == 0.0) return 0.0;
  if (sigma_is_direct(k, x)) return std::min(1.0, std::exp(log_poisson_sum(k + 1, kInfIndex, x)));
  return 1.0 - omega(k, x);
}

double sigma_quadrature(int k, double x, double rel_tol) {
  check_args(k, x);
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(k + 1.0);
  auto f = [k, lg](double y) {
    if (k == 0) return std::exp(-y);
    if (y <= 0.0) return 0.0;
    return std::exp(k * std::log(y) - y - lg);
  };
  // The integrand peaks at y = k; splitting there keeps the panels well resolved.
  const double breaks[] = {static_cast<double>(k)};
  return quad::adaptive_split(f, 0.0, x, breaks, rel_tol).value;
}

TailValue tail(int k, double x) { return {k, x, sigma(k, x), omega(k, x)}; }

double phi(double m, double t) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("phi: m must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("phi: t must be positive");
  return 0.5 * t * t - m * std::log(t);
}

bool RadialProfile::monotone() const {
  const double c = std::sqrt(m);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (radii[i + 1] <= c && values[i + 1] > values[i]) return false;
    if (radii[i] >= c && values[i + 1] < values[i]) return false;
  }
  return true;
}

RadialProfile radial_profile(double m, std::span<const double> radii) {
  RadialProfile p;
  p.m = m;
  p.radii.assign(radii.begin(), radii.end());
  std::sort(p.radii.begin(), p.radii.end());
  p.values.reserve(p.radii.size());
  for (double t : p.radii) p.values.push_back(phi(m, t));
  return p;
}

namespace {

template <class F>
TailLowerBound scan_lower_bound(int k0, int k_max, F&& value) {
  if (k0 >= k_max) throw ParameterError("tail scan range is empty or a single index");
  TailLowerBound r;
  r.k0 = k0;
  r.epsilon = std::numeric_limits<double>::infinity();
  r.first_half_min = r.second_half_min = std::numeric_limits<double>::infinity();
  const int mid = k0 + (k_max - k0) / 2;
  for (int k = k0; k <= k_max; ++k) {
    const double v = value(k);
    if (v < r.epsilon) {
      r.epsilon = v;
      r.k_argmin = k;
    }
    double& half = k <= mid ? r.first_half_min : r.second_half_min;
    half = std::min(half, v);
  }
  if (!(r.epsilon > 0.0))
    throw VerificationError("tail lower bound is not positive on the scanned range");
  if (r.second_half_min < kStabilityFraction * r.first_half_min)
    throw VerificationError("tail lower bound decays across the scanned range");
  return r;
}

void check_scan_args(double t, int k_max) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("t must be finite and nonnegative");
  if (k_max < 10) throw ParameterError("k_max must be at least 10");
}

} // namespace

TailLowerBound verify_tail_lower_a(double t, int k_max) {
  check_scan_args(t, k_max);
  const double t2 = t * t;
  if (t2 >= k_max) throw ParameterError("k - t sqrt(k) <= 0 for every k <= k_max");
  int k0 = static_cast<int>(std::floor(t2)) + 1;
  while (k0 <= k_max && k0 - t * std::sqrt(double(k0)) <= 0.0) ++k0;
  if (k0 > k_max) throw ParameterError("k - t sqrt(k) <= 0 for every k <= k_max");
  return scan_lower_bound(k0, k_max,
                          [t](int k) { return sigma(k, k - t * std::sqrt(double(k))); });
}

TailLowerBound verify_tail_lower_b(double t, int k_max) {
  check_scan_args(t, k_max);
  return scan_lower_bound(0, k_max,
                          [t](int k) { return omega(k, k + t * std::sqrt(double(k))); });
}

namespace {

void check_ratio_args(double epsilon, int k_max) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw ParameterError("epsilon must lie in (0, 1]");
  if (k_max < 1) throw ParameterError("k_max must be positive");
}

// Cache of log sigma_k(m) for 0 <= m <= k <= k_max.
struct LogSigmaTable {
  int k_max;
  std::vector<double> v;
  explicit LogSigmaTable(int kmax) : k_max(kmax), v(std::size_t(kmax + 1) * (kmax + 1), kNegInf) {
    for (int m = 1; m <= kmax; ++m)
      for (int k = m; k <= kmax; ++k) v[std::size_t(m) * (kmax + 1) + k] = log_sigma(k, m);
  }
  double at(int m, int k) const { return v[std::size_t(m) * (k_max + 1) + k]; }
};

bool holds_at(double epsilon, int k_max, double t, RatioCriterion criterion,
              const LogSigmaTable* table) {
  const double log_eps = std::log(epsilon);
  const int m0 = static_cast<int>(std::ceil(t * t - 1e-12));
  for (int m = std::max(m0, 0); m <= k_max; ++m) {
    const double x = std::max(0.0, m - t * std::sqrt(double(m)));
    if (criterion == RatioCriterion::Pointwise) {
      if (m == 0) continue;
      // t sqrt(y) + k log(1 - t/sqrt(y)) is decreasing in k, so k = m is the worst case.
      const double u = 1.0 - t / std::sqrt(double(m));
      const double lhs = u <= 0.0 ? kNegInf : t * std::sqrt(double(m)) + m * std::log(u);
      if (lhs > log_eps + 1e-12) return false;
      continue;
    }
    for (int k = m; k <= k_max; ++k) {
      const double lhs = log_sigma(k, x);
      const double rhs = table ? table->at(m, k) : log_sigma(k, m);
      if (lhs == kNegInf) continue;
      if (lhs > log_eps + rhs + 1e-12) return false;
    }
  }
  return true;
}

} // namespace

bool tail_ratio_holds(double epsilon, int k_max, double t, RatioCriterion criterion) {
  check_ratio_args(epsilon, k_max);
  if (!std::isfinite(t) || t < 0.0) throw DomainError("t must be finite and nonnegative");
  return holds_at(epsilon, k_max, t, criterion, nullptr);
}

TailRatio find_tail_ratio_t(double epsilon, int k_max, double t_step, RatioCriterion criterion) {
  check_ratio_args(epsilon, k_max);
  if (!(t_step > 0.0)) throw ParameterError("t_step must be positive");
  TailRatio r;
  r.proof_bound = std::sqrt(2.0 * std::log(1.0 / epsilon));
  r.cap = 2.0 * r.proof_bound;
  std::optional<LogSigmaTable> table;
  if (criterion == RatioCriterion::Integrated) table.emplace(k_max);
  for (int n = 0;; ++n) {
    const double t = n * t_step;
    if (t > r.cap + 1e-12) break;
    if (holds_at(epsilon, k_max, t, criterion, table ? &*table : nullptr)) {
      r.t = t;
      return r;
    }
  }
  throw VerificationError("no t on the search grid below twice the proof bound satisfies the tail ratio");
}

} // namespace fockdiv::specfun
