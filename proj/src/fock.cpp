#include "fockdiv/fock.hpp"

#include "fockdiv/errors.hpp"
#include "fockdiv/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fockdiv::fock {

CoefVec::CoefVec(int n) {
  if (n < 1) throw ParameterError("truncation degree must be positive");
  a_ = Vec::Zero(n);
}

CoefVec::CoefVec(Vec a) : a_(std::move(a)) {
  if (a_.size() < 1) throw ParameterError("truncation degree must be positive");
}

CoefVec CoefVec::basis(int k, int n) {
  if (k < 0 || k >= n) throw ParameterError("basis index outside the truncation");
  CoefVec v(n);
  v.a_[k] = 1.0;
  return v;
}

CoefVec CoefVec::kernel(cplx z, int n) {
  CoefVec v(n);
  const double x = std::norm(z);
  if (x == 0.0) {
    v.a_[0] = 1.0;
    return v;
  }
  const cplx ph = std::conj(z) / std::abs(z);
  const double lr = std::log(std::abs(z));
  cplx p = 1.0;
  for (int k = 0; k < n; ++k) {
    const double lm = k * lr - 0.5 * x - 0.5 * std::lgamma(k + 1.0);
    v.a_[k] = lm < -745.0 ? cplx(0.0) : std::exp(lm) * p;
    p *= ph;
  }
  return v;
}

cplx CoefVec::evaluate(cplx z) const {
  cplx sum = 0.0, zk = 1.0;
  for (int k = 0; k < size(); ++k) {
    sum += a_[k] * zk;
    zk *= z / std::sqrt(double(k + 1));
  }
  return sum;
}

double DisplacementMatrix::column_deficit(int j) const { return 1.0 - m_.col(j).squaredNorm(); }

double DisplacementMatrix::max_column_deficit() const {
  double d = 0.0;
  for (int j = 0; j < cols(); ++j) d = std::max(d, column_deficit(j));
  return d;
}

double DisplacementMatrix::tail_bound() const {
  double s = 0.0;
  for (int j = 0; j < cols(); ++j) s += std::max(0.0, column_deficit(j));
  return s + 4.0 * std::numeric_limits<double>::epsilon() * rows() * cols();
}

CoefVec DisplacementMatrix::apply(const CoefVec& a) const {
  if (a.size() != cols()) throw ParameterError("coefficient vector length does not match matrix");
  return CoefVec(Vec(m_ * a.coeffs()));
}

DisplacementMatrix displacement_matrix(cplx z, int n) { return displacement_matrix(z, n, n); }

DisplacementMatrix displacement_matrix(cplx z, int rows, int cols) {
  if (rows < 1 || cols < 1) throw ParameterError("displacement matrix size must be positive");
  Mat D = Mat::Zero(rows, cols);
  const double x = std::norm(z);
  if (x == 0.0) {
    for (int i = 0; i < std::min(rows, cols); ++i) D(i, i) = 1.0;
    return {z, std::move(D)};
  }
  // T_z is the displacement operator with parameter conj(z). Along the n-th diagonal,
  // P_i = sqrt(i!/(i+n)!) |z|^n e^{-x/2} L_i^{(n)}(x) obeys the three-term Laguerre
  // recurrence in i; a running log-scale keeps the mantissas in range.
  //   D_{i+n, i} = (conj z / |z|)^n P_i,   D_{i, i+n} = (-z / |z|)^n P_i.
  const double az = std::abs(z), log_az = std::log(az);
  const cplx ph_lo = std::conj(z) / az, ph_up = -z / az;
  const int nmax = std::max(rows, cols) - 1;
  cplx pl = 1.0, pu = 1.0;  // running phases
  for (int n = 0; n <= nmax; ++n) {
    const int len_lo = std::min(cols, rows - n);  // i < cols, i + n < rows
    const int len_up = n == 0 ? 0 : std::min(rows, cols - n);
    const int len = std::max(len_lo, len_up);
    if (len > 0) {
      double scale = n * log_az - 0.5 * x - 0.5 * std::lgamma(n + 1.0);
      double prev = 0.0, cur = 1.0;
      auto store = [&](int i, double p) {
        double v = 0.0;
        if (p != 0.0) {
          const double lv = std::log(std::abs(p)) + scale;
          v = lv < -745.0 ? 0.0 : std::copysign(std::exp(lv), p);
        }
        if (i < len_lo) D(i + n, i) = v * pl;
        if (i < len_up) D(i, i + n) = v * pu;
      };
      store(0, cur);
      if (len > 1) {
        prev = cur;
        cur = (1.0 + n - x) * prev * std::sqrt(1.0 / (n + 1.0));
        store(1, cur);
      }
      for (int i = 1; i + 1 < len; ++i) {
        const double a = (2.0 * i + 1 + n - x) * std::sqrt((i + 1.0) / (i + n + 1.0));
        const double b = (i + n) * std::sqrt((i + 1.0) * i / ((i + n + 1.0) * (i + n)));
        const double next = (a * cur - b * prev) / (i + 1.0);
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(prev), std::abs(cur));
        if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
          prev /= mag;
          cur /= mag;
          scale += std::log(mag);
        }
        store(i + 1, cur);
      }
    }
    pl *= ph_lo;
    pu *= ph_up;
  }
  return {z, std::move(D)};
}

double kernel_tail(int n, double abs_z) {
  if (n < 1) throw ParameterError("truncation degree must be positive");
  return specfun::sigma(n - 1, abs_z * abs_z);
}

double basis_disc_norm(int k, double R) {
  if (!(R >= 0.0)) throw DomainError("disc radius must be nonnegative");
  if (std::isinf(R)) return 1.0;
  return specfun::sigma(k, R * R);
}

Vec restriction_values(const CoefVec& f, cplx lambda, int m) {
  if (m < 1) throw ParameterError("multiplicity must be at least 1");
  if (m > f.size()) throw ParameterError("multiplicity exceeds the truncation degree");
  const auto D = displacement_matrix(lambda, f.size(), m);
  return D.matrix().adjoint() * f.coeffs();
}

double quotient_norm_sq(const CoefVec& f, cplx lambda, int m) {
  return restriction_values(f, lambda, m).squaredNorm();
}

double kernel_sampling_energy(cplx z, const Divisor& x) {
  double e = 0.0;
  for (const auto& n : x.nodes()) e += specfun::omega(n.multiplicity - 1, x.alpha() * std::norm(z - n.center));
  return e;
}

double disc_local_norm_sq(const CoefVec& f, cplx center, double R) {
  if (!(R >= 0.0)) throw DomainError("disc radius must be nonnegative");
  const int n = f.size();
  Vec b;
  if (center == cplx(0.0)) {
    b = f.coeffs();
  } else {
    const double s = std::sqrt(double(n)) + std::abs(center) + 8.0;
    const int rows = std::max(n, static_cast<int>(std::ceil(s * s)));
    const auto D = displacement_matrix(-center, rows, n);
    // Mass of T_{-c} f pushed past the row truncation.
    double lost = 0.0;
    for (int j = 0; j < n; ++j) lost += std::norm(f[j]) * std::max(0.0, D.column_deficit(j));
    if (lost > 1e-10 * std::max(f.norm_sq(), 1e-300))
      throw ResourceError("recentred coefficients not resolved at the chosen truncation");
    b = D.matrix() * f.coeffs();
  }
  double sum = 0.0;
  for (int k = 0; k < b.size(); ++k) {
    const double w = std::norm(b[k]);
    if (w != 0.0) sum += w * basis_disc_norm(k, R);
  }
  return sum;
}

ConcentrationCheck local_concentration_check(const CoefVec& f, int m, double eta, double a_step) {
  if (m < 1) throw ParameterError("m must be at least 1");
  if (!(eta > 0.0) || eta > 1.0) throw ParameterError("eta must lie in (0, 1]");
  if (!(a_step > 0.0)) throw ParameterError("a_step must be positive");
  const double c = std::sqrt(double(m));
  double low = 0.0;
  for (int k = 0; k < std::min(m, f.size()); ++k) low += std::norm(f[k]);
  if (low > 0.5 * eta * (1 + 1e-12))
    throw PreconditionError("low-degree mass exceeds eta/2");
  if (disc_local_norm_sq(f, 0.0, c) > 1.0 + 1e-12)
    throw PreconditionError("mass on D(sqrt m) exceeds 1");

  ConcentrationCheck r;
  r.inconclusive = true;
  for (int i = 0;; ++i) {
    const double a = i * a_step;
    if (a > c) break;
    if (disc_local_norm_sq(f, 0.0, c - a) <= eta) {
      r.a_used = a;
      r.inconclusive = false;
      break;
    }
  }
  if (r.inconclusive) r.a_used = std::numeric_limits<double>::quiet_NaN();
  const int k_max = std::max({m, f.size() - 1, 10});
  r.t = specfun::find_tail_ratio_t(0.5 * eta, k_max).t;
  r.a_predicted = c - std::sqrt(std::max(0.0, m - r.t * c));
  r.passes = disc_local_norm_sq(f, 0.0, c - r.a_predicted) <= eta * (1 + 1e-12);
  return r;
}

int recommended_truncation(const Divisor& x, double margin, int guard) {
  if (x.empty()) return std::max(1, guard);
  const double mg = margin < 0.0 ? std::sqrt(double(x.max_multiplicity())) + 6.0 : margin;
  const double r = x.max_abs_center() * std::sqrt(x.alpha()) + mg;
  const double geo = std::ceil(r * r) + guard;
  const double total = static_cast<double>(x.total_multiplicity());
  const double n = std::max(total, geo);
  if (n > 1e8) throw ResourceError("recommended truncation is too large");
  return static_cast<int>(n);
}

} // namespace fockdiv::fock
