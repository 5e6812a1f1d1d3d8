#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace skorokhod::kernels::detail {

double superlevel_mass_neon(const double* g, const double* w, std::size_t n, double level) {
  const float64x2_t vlevel = vdupq_n_f64(level);
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t acc = zero;
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t g0 = vld1q_f64(g + j);
    const float64x2_t g1 = vld1q_f64(g + j + 1);
    const float64x2_t lo = vminq_f64(g0, g1);
    const float64x2_t hi = vmaxq_f64(g0, g1);
    const float64x2_t above = vsubq_f64(hi, vlevel);
    const float64x2_t below = vsubq_f64(vlevel, lo);
    float64x2_t frac = vdivq_f64(one, vaddq_f64(one, vdivq_f64(below, above)));
    frac = vbslq_f64(vcgtq_f64(below, zero), frac, one);
    frac = vbslq_f64(vcgtq_f64(above, zero), frac, zero);
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(w + j), frac));
  }
  double total = vaddvq_f64(acc);
  for (; j < n; ++j) total += w[j] * segment_fraction(g[j], g[j + 1], level);
  return total;
}

double stieltjes_trapezoid_neon(const double* f, const double* m, std::size_t n) {
  const float64x2_t half = vdupq_n_f64(0.5);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t mean = vmulq_f64(half, vaddq_f64(vld1q_f64(f + j), vld1q_f64(f + j + 1)));
    const float64x2_t dm = vsubq_f64(vld1q_f64(m + j + 1), vld1q_f64(m + j));
    acc = vaddq_f64(acc, vmulq_f64(mean, dm));
  }
  double total = vaddvq_f64(acc);
  for (; j < n; ++j) total += 0.5 * (f[j] + f[j + 1]) * (m[j + 1] - m[j]);
  return total;
}

}  // namespace skorokhod::kernels::detail
