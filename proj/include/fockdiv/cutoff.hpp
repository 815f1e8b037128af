#pragma once

#include "fockdiv/divisor.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fockdiv::potential {

// Quintic smoothstep cut-off: eta = 1 on (-inf, -C], 0 on [0, inf).
double eta(double s, double C);
double eta_prime(double s, double C);
// sup |eta'| = 15 / (8 C)
double eta_prime_sup(double C);

struct CutoffValue {
  cplx F{};
  cplx dbar{};             // dbar F at z
  double dbar_bound = 0.0; // sup|eta'| |Q_lambda(z)| on the transition annulus, 0 elsewhere
  int active = -1;         // node whose annulus contains z, -1 if none
};

// F(z) = sum Q_lambda(z) eta(|z - lambda| - sqrt m_lambda - C), Q_lambda = T_lambda p_lambda,
// with p_lambda given by its coefficients in the basis e_k. z and C are in alpha = 1
// coordinates.
class CutoffInterpolant {
public:
  // Throws PreconditionError unless the discs D(lambda, sqrt m + C) are pairwise disjoint.
  CutoffInterpolant(Divisor x, std::vector<Eigen::VectorXcd> payload, double C);

  double margin() const noexcept { return C_; }
  double eta_prime_sup() const noexcept;
  cplx Q(std::size_t i, cplx z) const;
  CutoffValue evaluate(cplx z) const;

private:
  Divisor x_;
  std::vector<Eigen::VectorXcd> p_;
  double C_;
};

} // namespace fockdiv::potential
