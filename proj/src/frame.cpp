#include "fockdiv/frame.hpp"

#include "fockdiv/errors.hpp"
#include "fockdiv/lanczos.hpp"
#include "fockdiv/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fockdiv::frame {

Eigen::VectorXcd RestrictionMatrix::apply(const fock::CoefVec& f) const {
  if (f.size() != cols()) throw ParameterError("coefficient vector length does not match matrix");
  return matrix * f.coeffs();
}

RestrictionMatrix restriction_matrix(const Divisor& x, int n, const Options& opt) {
  if (n < 1) throw ParameterError("truncation degree must be positive");
  const Divisor xn = x.normalized();
  const auto total = static_cast<std::size_t>(xn.total_multiplicity());
  if (total * static_cast<std::size_t>(n) > opt.max_entries)
    throw ResourceError("restriction matrix exceeds the configured size cap");
  for (const auto& nd : xn.nodes())
    if (nd.multiplicity > n) throw ParameterError("multiplicity exceeds the truncation degree");

  RestrictionMatrix r;
  r.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(total), n);
  std::vector<std::size_t> offset(xn.size() + 1, 0);
  for (std::size_t i = 0; i < xn.size(); ++i) offset[i + 1] = offset[i] + xn[i].multiplicity;
  r.node.resize(total);
  r.order.resize(total);
  std::vector<double> tails(xn.size(), 0.0);
  parallel::for_each_index(xn.size(), [&](std::size_t i) {
    const auto D = fock::displacement_matrix(xn[i].center, n, xn[i].multiplicity);
    r.matrix.middleRows(offset[i], xn[i].multiplicity) = D.matrix().adjoint();
    tails[i] = D.max_column_deficit();
    for (int k = 0; k < xn[i].multiplicity; ++k) {
      r.node[offset[i] + k] = i;
      r.order[offset[i] + k] = k;
    }
  });
  for (double t : tails) r.tail_bound = std::max(r.tail_bound, std::max(0.0, t));
  return r;
}

std::string FrameReport::test_space() const {
  return "span{e_0..e_" + std::to_string(N - 1) + "}; A is an upper estimate of the lower frame "
         "bound, B a lower estimate of the upper one";
}

FrameReport frame_bounds(const Divisor& x, int n, const Options& opt) {
  FrameReport rep;
  rep.N = n;
  if (n < 1) throw ParameterError("truncation degree must be positive");
  if (x.empty()) {
    rep.method = "empty";
    return rep;
  }
  const auto R = restriction_matrix(x, n, opt);
  rep.tail_bound = R.tail_bound;
  if (n <= opt.dense_limit) {
    rep.method = "dense";
    const Eigen::MatrixXcd G = R.matrix.adjoint() * R.matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", NAN);
    rep.A = es.eigenvalues()[0];
    rep.B = es.eigenvalues()[n - 1];
  } else {
    rep.method = "lanczos";
    const auto& M = R.matrix;
    Eigen::VectorXcd tmp(M.rows());
    lanczos::MatVec op = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
      tmp.noalias() = M * in;
      out.noalias() = M.adjoint() * tmp;
    };
    rep.B = lanczos::extremal(op, n, lanczos::Which::Largest, opt.tol, opt.max_iterations).value;
    if (R.rows() < n) {
      rep.A = 0.0;  // G has a kernel
    } else {
      // Shift so the smallest eigenvalue of G becomes the largest of B I - G.
      const double b = rep.B;
      lanczos::MatVec sh = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        op(in, out);
        out = b * in - out;
      };
      rep.A = b - lanczos::extremal(sh, n, lanczos::Which::Largest, opt.tol, opt.max_iterations).value;
    }
  }
  rep.A = std::max(0.0, rep.A);
  rep.B = std::max(rep.B, rep.A);
  return rep;
}

namespace {

std::vector<cplx> to_std(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::BDCSVD<Eigen::MatrixXcd> svd_of(const RestrictionMatrix& r, bool thin_v) {
  const unsigned flags = thin_v ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : Eigen::ComputeThinU;
  return Eigen::BDCSVD<Eigen::MatrixXcd>(r.matrix, flags);
}

void require_onto(const Eigen::BDCSVD<Eigen::MatrixXcd>& svd, int rows, double threshold) {
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  const double smin = s.size() ? s[s.size() - 1] : 0.0;
  if (s.size() < rows || !(smin > threshold * smax)) {
    Eigen::VectorXcd dir = Eigen::VectorXcd::Zero(rows);
    if (s.size() == rows) dir = svd.matrixU().col(rows - 1);
    throw NotInterpolatingError("not interpolating at this truncation", to_std(dir),
                                s.size() == rows ? smin : 0.0);
  }
}

} // namespace

double interpolation_constant(const Divisor& x, int n, const Options& opt) {
  if (n < 1) throw ParameterError("truncation degree must be positive");
  if (x.empty()) return 0.0;
  if (x.total_multiplicity() > n)
    throw NotInterpolatingError("more data than basis functions at this truncation", {}, 0.0);
  const auto R = restriction_matrix(x, n, opt);
  // Data directions live in C^{sum m}; U is square when sum m <= N.
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(R.matrix, Eigen::ComputeFullU);
  require_onto(svd, R.rows(), opt.rank_threshold);
  return 1.0 / svd.singularValues()[R.rows() - 1];
}

std::vector<DefectPoint> sampling_defect_path(const Divisor& x, const std::vector<cplx>& path) {
  std::vector<DefectPoint> out(path.size());
  parallel::for_each_index(path.size(), [&](std::size_t i) {
    DefectPoint p;
    p.z = path[i];
    p.energy = fock::kernel_sampling_energy(path[i], x);
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j) d = std::min(d, std::abs(path[i] - x[j].center) - x.radius(j));
    p.distance = std::isinf(d) ? d : std::max(0.0, d);
    out[i] = p;
  });
  return out;
}

Eigen::VectorXcd kernel_data(cplx w, cplx lambda, int m) {
  if (m < 1) throw ParameterError("multiplicity must be at least 1");
  Eigen::VectorXcd v(m);
  const cplx pre = std::exp(lambda * std::conj(w) - 0.5 * std::norm(lambda) - 0.5 * std::norm(w));
  const cplx d = std::conj(w - lambda);
  const double ad = std::abs(d);
  if (ad == 0.0) {
    v.setZero();
    v[0] = pre;
    return v;
  }
  const cplx ph = d / ad;
  cplx p = 1.0;
  for (int k = 0; k < m; ++k) {
    const double lm = k * std::log(ad) - 0.5 * std::lgamma(k + 1.0);
    v[k] = pre * p * std::exp(lm);
    p *= ph;
  }
  return v;
}

Witness interpolation_witness(const Divisor& x, cplx w, int n, const Options& opt) {
  if (x.empty()) throw ParameterError("witness needs at least one node");
  if (x.total_multiplicity() > n)
    throw NotInterpolatingError("more data than basis functions at this truncation", {}, 0.0);
  const Divisor xn = x.normalized();
  const cplx wn = w * std::sqrt(x.alpha());
  Witness out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xn.size(); ++i) {
    const double d = std::abs(xn[i].center - wn);
    if (d < best) {
      best = d;
      out.target = i;
    }
  }
  const auto R = restriction_matrix(x, n, opt);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(R.rows());
  std::size_t off = 0;
  for (std::size_t i = 0; i < out.target; ++i) off += xn[i].multiplicity;
  v.segment(off, xn[out.target].multiplicity) = kernel_data(wn, xn[out.target].center, xn[out.target].multiplicity);
  auto svd = svd_of(R, true);
  require_onto(svd, R.rows(), opt.rank_threshold);
  const Eigen::VectorXcd f = svd.solve(v);
  out.norm = f.norm();
  out.residual = (R.matrix * f - v).norm();
  return out;
}

} // namespace fockdiv::frame
