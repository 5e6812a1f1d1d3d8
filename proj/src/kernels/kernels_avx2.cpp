#include <immintrin.h>

#include "kernels_impl.hpp"

namespace skorokhod::kernels::detail {

namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double superlevel_mass_avx2(const double* g, const double* w, std::size_t n, double level) {
  const __m256d vlevel = _mm256_set1_pd(level);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = zero;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d g0 = _mm256_loadu_pd(g + j);
    const __m256d g1 = _mm256_loadu_pd(g + j + 1);
    const __m256d lo = _mm256_min_pd(g0, g1);
    const __m256d hi = _mm256_max_pd(g0, g1);
    const __m256d above = _mm256_sub_pd(hi, vlevel);
    const __m256d below = _mm256_sub_pd(vlevel, lo);
    // NaN lanes from inf/inf or x/0 are masked out by the blends below.
    __m256d frac = _mm256_div_pd(one, _mm256_add_pd(one, _mm256_div_pd(below, above)));
    frac = _mm256_blendv_pd(frac, one, _mm256_cmp_pd(below, zero, _CMP_NGT_UQ));
    frac = _mm256_blendv_pd(frac, zero, _mm256_cmp_pd(above, zero, _CMP_NGT_UQ));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + j), frac));
  }
  double total = horizontal_sum(acc);
  for (; j < n; ++j) total += w[j] * segment_fraction(g[j], g[j + 1], level);
  return total;
}

double stieltjes_trapezoid_avx2(const double* f, const double* m, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d mean = _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(f + j), _mm256_loadu_pd(f + j + 1)));
    const __m256d dm = _mm256_sub_pd(_mm256_loadu_pd(m + j + 1), _mm256_loadu_pd(m + j));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(mean, dm));
  }
  double total = horizontal_sum(acc);
  for (; j < n; ++j) total += 0.5 * (f[j] + f[j + 1]) * (m[j + 1] - m[j]);
  return total;
}

}  // namespace skorokhod::kernels::detail
