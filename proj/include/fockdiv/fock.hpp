#pragma once

#include "fockdiv/divisor.hpp"

#include <Eigen/Dense>

#include <complex>

// Coefficient-space model of the Fock space F^2 (alpha = 1) in the orthonormal basis
// e_k(z) = z^k / sqrt(k!) with respect to d mu = e^{-|z|^2} dm / pi.
namespace fockdiv::fock {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

class CoefVec {
public:
  CoefVec() = default;
  explicit CoefVec(int n);
  explicit CoefVec(Vec a);

  static CoefVec basis(int k, int n);
  // Normalized reproducing kernel T_z 1 = e^{conj(z) zeta - |z|^2/2}, truncated to degree n-1.
  static CoefVec kernel(cplx z, int n);

  int size() const noexcept { return static_cast<int>(a_.size()); }
  const Vec& coeffs() const noexcept { return a_; }
  Vec& coeffs() noexcept { return a_; }
  cplx operator[](int k) const { return a_[k]; }
  double norm_sq() const { return a_.squaredNorm(); }

  // f(z) by Horner-free summation of a_k z^k / sqrt(k!); only for |z|^2 well below size().
  cplx evaluate(cplx z) const;

private:
  Vec a_;
};

// D_{k,j} = <T_z e_j, e_k> for k < rows, j < cols.
class DisplacementMatrix {
public:
  DisplacementMatrix(cplx z, Mat m) : z_(z), m_(std::move(m)) {}

  cplx center() const noexcept { return z_; }
  const Mat& matrix() const noexcept { return m_; }
  int rows() const noexcept { return static_cast<int>(m_.rows()); }
  int cols() const noexcept { return static_cast<int>(m_.cols()); }
  cplx operator()(int k, int j) const { return m_(k, j); }

  // 1 - ||column j||^2: the mass of T_z e_j beyond the row truncation.
  double column_deficit(int j) const;
  double max_column_deficit() const;
  // Sum of column deficits; bounds both ||D^H D - I||_max and its operator norm.
  double tail_bound() const;

  CoefVec apply(const CoefVec& a) const;

private:
  cplx z_;
  Mat m_;
};

DisplacementMatrix displacement_matrix(cplx z, int n);
DisplacementMatrix displacement_matrix(cplx z, int rows, int cols);

// sigma_{n-1}(|z|^2): norm mass of T_z 1 beyond degree n-1.
double kernel_tail(int n, double abs_z);

double basis_disc_norm(int k, double R);

// (<f, T_lambda e_k>)_{k < m}
Vec restriction_values(const CoefVec& f, cplx lambda, int m);
double quotient_norm_sq(const CoefVec& f, cplx lambda, int m);

// sum_lambda omega_{m-1}(alpha |z - lambda|^2): quotient-norm energy of T_z 1 against X.
double kernel_sampling_energy(cplx z, const Divisor& x);

// int_{D(center, R)} |f|^2 d mu
double disc_local_norm_sq(const CoefVec& f, cplx center, double R);

struct ConcentrationCheck {
  bool passes = false;        // the predicted a(eta) already brings the disc mass below eta
  bool inconclusive = false;  // no grid a with a^2 <= m reaches eta
  double a_used = 0.0;        // smallest grid a with disc_local_norm_sq(f, 0, sqrt m - a) <= eta
  double a_predicted = 0.0;   // sqrt m - sqrt(m - t sqrt m), t from the tail-ratio search at eta/2
  double t = 0.0;
};

ConcentrationCheck local_concentration_check(const CoefVec& f, int m, double eta,
                                             double a_step = 0.05);

// max(sum m, ceil((max|lambda| sqrt(alpha) + margin)^2) + guard); margin < 0 selects
// sqrt(max m) + 6.
int recommended_truncation(const Divisor& x, double margin = -1.0, int guard = 16);

} // namespace fockdiv::fock
