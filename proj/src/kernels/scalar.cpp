#include "fockdiv/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace fockdiv::kernels {

namespace {

void count_inside_scalar(const double* xs, std::size_t n, double y, double cx, double cy,
                         double r2, std::int32_t* counts) {
  const double dy = y - cy;
  const double dy2 = dy * dy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double d2 = dx * dx + dy2;
    counts[i] += d2 < r2 ? 1 : 0;
  }
}

void min_gap_scalar(const double* xs, std::size_t n, double y, double cx, double cy,
                    double rho, double* gap) {
  const double dy = y - cy;
  const double dy2 = dy * dy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double g = std::sqrt(dx * dx + dy2) - rho;
    gap[i] = g < gap[i] ? g : gap[i];
  }
}

} // namespace

const Table& scalar_table() {
  static const Table t{Backend::Scalar, "scalar", &count_inside_scalar, &min_gap_scalar};
  return t;
}

} // namespace fockdiv::kernels
