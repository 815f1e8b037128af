#include "fockdiv/lanczos.hpp"

#include "fockdiv/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace fockdiv::lanczos {

Eigenpair extremal(const MatVec& op, int n, Which which, double tol, int max_matvecs,
                   int subspace, std::uint64_t seed) {
  using Vec = Eigen::VectorXcd;
  if (n < 1) throw ParameterError("operator dimension must be positive");
  const int k = std::max(2, std::min(subspace, n));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vec start(n);
  for (int i = 0; i < n; ++i) start[i] = {g(rng), g(rng)};
  start.normalize();

  Eigenpair best;
  double scale = 0.0;
  int used = 0;
  Eigen::MatrixXcd V(n, k);
  Vec w(n);
  while (used < max_matvecs) {
    std::vector<double> alpha, beta;
    V.col(0) = start;
    int m = 0;
    for (; m < k; ++m) {
      op(V.col(m), w);
      ++used;
      const double a = V.col(m).dot(w).real();
      alpha.push_back(a);
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass)
        w -= V.leftCols(m + 1) * (V.leftCols(m + 1).adjoint() * w);
      const double b = w.norm();
      if (m + 1 == k) {
        beta.push_back(b);
        ++m;
        break;
      }
      if (b <= 1e-14 * std::max(1.0, std::abs(a))) {  // invariant subspace found
        beta.push_back(0.0);
        ++m;
        break;
      }
      beta.push_back(b);
      V.col(m + 1) = w / b;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const int idx = which == Which::Smallest ? 0 : m - 1;
    scale = std::max({scale, std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[m - 1])});
    const Eigen::VectorXd s = es.eigenvectors().col(idx);
    Vec y = V.leftCols(m) * s.cast<std::complex<double>>();
    y.normalize();
    best.value = es.eigenvalues()[idx];
    best.vector = y;
    best.residual = std::abs(beta[m - 1] * s[m - 1]);
    best.matvecs = used;
    if (best.residual <= tol * std::max(scale, 1e-300) || beta[m - 1] == 0.0) return best;
    start = y;
  }
  throw ConvergenceError("Lanczos iteration did not converge", best.residual);
}

} // namespace fockdiv::lanczos
