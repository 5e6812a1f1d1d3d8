#include "kernels_impl.hpp"

namespace skorokhod::kernels::detail {

double superlevel_mass_scalar(const double* g, const double* w, std::size_t n, double level) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += w[j] * segment_fraction(g[j], g[j + 1], level);
  return total;
}

double stieltjes_trapezoid_scalar(const double* f, const double* m, std::size_t n) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += 0.5 * (f[j] + f[j + 1]) * (m[j + 1] - m[j]);
  return total;
}

}  // namespace skorokhod::kernels::detail
