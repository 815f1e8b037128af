#pragma once

#include "fockdiv/divisor.hpp"
#include "fockdiv/fock.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace fockdiv::frame {

struct Options {
  int dense_limit = 2000;                  // full eigendecomposition up to this N
  double tol = 1e-10;                      // relative tolerance for the iterative solver
  int max_iterations = 10000;
  std::size_t max_entries = 200'000'000;   // cap on N * sum m for assembled matrices
  double rank_threshold = 1e-12;           // relative to sigma_max
};

// Rows indexed by (lambda, k < m_lambda) in input order, k ascending; columns by basis
// index j < N. Entry <e_j, T_lambda e_k>, in alpha = 1 coordinates.
struct RestrictionMatrix {
  Eigen::MatrixXcd matrix;
  std::vector<std::size_t> node;  // row -> node index
  std::vector<int> order;         // row -> k
  double tail_bound = 0.0;        // largest truncation loss of any T_lambda e_k

  int rows() const noexcept { return static_cast<int>(matrix.rows()); }
  int cols() const noexcept { return static_cast<int>(matrix.cols()); }
  Eigen::VectorXcd apply(const fock::CoefVec& f) const;
};

RestrictionMatrix restriction_matrix(const Divisor& x, int n, const Options& opt = {});

struct FrameReport {
  int N = 0;
  double A = 0.0;
  double B = 0.0;
  double tail_bound = 0.0;
  std::string method;  // "dense" or "lanczos"
  // Bounds are computed on span{e_0..e_{N-1}}: A overestimates the lower frame bound
  // of the full space and B underestimates the upper one.
  std::string test_space() const;
};

FrameReport frame_bounds(const Divisor& x, int n, const Options& opt = {});

// Norm of the minimal-norm right inverse of the truncated restriction operator.
// Throws NotInterpolatingError when the operator is not onto at this truncation.
double interpolation_constant(const Divisor& x, int n, const Options& opt = {});

struct DefectPoint {
  cplx z;
  double energy = 0.0;    // kernel sampling energy of T_z 1
  double distance = 0.0;  // distance from z to the union of the discs D(lambda, r_lambda)
};

std::vector<DefectPoint> sampling_defect_path(const Divisor& x, const std::vector<cplx>& path);

// <T_w 1, T_lambda e_k>, k < m, closed form (alpha = 1 coordinates).
Eigen::VectorXcd kernel_data(cplx w, cplx lambda, int m);

struct Witness {
  double norm = 0.0;
  std::size_t target = 0;  // node receiving the kernel data
  double residual = 0.0;   // ||R f - v|| of the computed solution
};

// Minimal-norm f with zero data at every node except the one nearest w, where it
// matches the data of T_w 1.
Witness interpolation_witness(const Divisor& x, cplx w, int n, const Options& opt = {});

} // namespace fockdiv::frame
