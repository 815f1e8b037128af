#include "fockdiv/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace fockdiv::kernels {

namespace {

void count_inside_neon(const double* xs, std::size_t n, double y, double cx, double cy,
                       double r2, std::int32_t* counts) {
  const double dy = y - cy;
  const double dy2 = dy * dy;
  const float64x2_t vcx = vdupq_n_f64(cx), vdy2 = vdupq_n_f64(dy2), vr2 = vdupq_n_f64(r2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vcx);
    // vmulq + vaddq, not vfmaq: keep the scalar rounding.
    const float64x2_t d2 = vaddq_f64(vmulq_f64(dx, dx), vdy2);
    const uint64x2_t lt = vcltq_f64(d2, vr2);
    counts[i] += vgetq_lane_u64(lt, 0) ? 1 : 0;
    counts[i + 1] += vgetq_lane_u64(lt, 1) ? 1 : 0;
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double d2 = dx * dx + dy2;
    counts[i] += d2 < r2 ? 1 : 0;
  }
}

void min_gap_neon(const double* xs, std::size_t n, double y, double cx, double cy, double rho,
                  double* gap) {
  const double dy = y - cy;
  const double dy2 = dy * dy;
  const float64x2_t vcx = vdupq_n_f64(cx), vdy2 = vdupq_n_f64(dy2), vrho = vdupq_n_f64(rho);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vcx);
    const float64x2_t g = vsubq_f64(vsqrtq_f64(vaddq_f64(vmulq_f64(dx, dx), vdy2)), vrho);
    const float64x2_t old = vld1q_f64(gap + i);
    vst1q_f64(gap + i, vbslq_f64(vcltq_f64(g, old), g, old));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double g = std::sqrt(dx * dx + dy2) - rho;
    gap[i] = g < gap[i] ? g : gap[i];
  }
}

} // namespace

const Table* neon_table() {
  static const Table t{Backend::Neon, "neon", &count_inside_neon, &min_gap_neon};
  return &t;
}

} // namespace fockdiv::kernels
