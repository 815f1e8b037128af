#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

namespace fockdiv::lanczos {

using MatVec = std::function<void(const Eigen::VectorXcd& in, Eigen::VectorXcd& out)>;

enum class Which { Smallest, Largest };

struct Eigenpair {
  double value = 0.0;
  double residual = 0.0;  // ||G v - value v|| for the returned unit Ritz vector
  int matvecs = 0;
  Eigen::VectorXcd vector;
};

// Explicitly restarted Lanczos with full reorthogonalization for one extremal eigenvalue
// of a Hermitian operator of dimension n. Stops when residual <= tol * scale, where
// scale is the largest Ritz value magnitude seen. Throws ConvergenceError otherwise.
Eigenpair extremal(const MatVec& op, int n, Which which, double tol = 1e-10,
                   int max_matvecs = 10000, int subspace = 60, std::uint64_t seed = 1);

} // namespace fockdiv::lanczos
