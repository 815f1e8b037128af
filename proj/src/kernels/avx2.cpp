#include "fockdiv/kernels.hpp"

#include <immintrin.h>

#include <cmath>

// Compiled with a target attribute rather than -mavx2 so the rest of the library stays
// baseline x86-64. FMA is deliberately not enabled: contraction would change rounding
// relative to the scalar reference.
#define FOCKDIV_AVX2 __attribute__((target("avx2")))

namespace fockdiv::kernels {

namespace {

FOCKDIV_AVX2 void count_inside_avx2(const double* xs, std::size_t n, double y, double cx,
                                    double cy, double r2, std::int32_t* counts) {
  const double dy = y - cy;
  const double dy2 = dy * dy;
  const __m256d vcx = _mm256_set1_pd(cx), vdy2 = _mm256_set1_pd(dy2), vr2 = _mm256_set1_pd(r2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vcx);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), vdy2);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, vr2, _CMP_LT_OQ));
    const __m128i inc = _mm_setr_epi32(mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1);
    __m128i c = _mm_loadu_si128(reinterpret_cast<const __m128i*>(counts + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(counts + i), _mm_add_epi32(c, inc));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double d2 = dx * dx + dy2;
    counts[i] += d2 < r2 ? 1 : 0;
  }
}

FOCKDIV_AVX2 void min_gap_avx2(const double* xs, std::size_t n, double y, double cx, double cy,
                               double rho, double* gap) {
  const double dy = y - cy;
  const double dy2 = dy * dy;
  const __m256d vcx = _mm256_set1_pd(cx), vdy2 = _mm256_set1_pd(dy2), vrho = _mm256_set1_pd(rho);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vcx);
    const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), vdy2));
    const __m256d g = _mm256_sub_pd(d, vrho);
    const __m256d old = _mm256_loadu_pd(gap + i);
    // blend rather than min_pd so NaN handling matches "g < old ? g : old"
    const __m256d lt = _mm256_cmp_pd(g, old, _CMP_LT_OQ);
    _mm256_storeu_pd(gap + i, _mm256_blendv_pd(old, g, lt));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double g = std::sqrt(dx * dx + dy2) - rho;
    gap[i] = g < gap[i] ? g : gap[i];
  }
}

} // namespace

const Table* avx2_table() {
  static const Table t{Backend::Avx2, "avx2", &count_inside_avx2, &min_gap_avx2};
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") ? &t : nullptr;
}

} // namespace fockdiv::kernels
