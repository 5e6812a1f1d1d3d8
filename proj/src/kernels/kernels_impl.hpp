#pragma once

// Per-ISA kernel entry points. Raw pointers keep the vector translation units
// free of standard-library headers compiled with different target flags.

#include <cstddef>

namespace skorokhod::kernels::detail {

double superlevel_mass_scalar(const double* g, const double* w, std::size_t n, double level);
double stieltjes_trapezoid_scalar(const double* f, const double* m, std::size_t n);

#if defined(SKOROKHOD_HAVE_AVX2)
double superlevel_mass_avx2(const double* g, const double* w, std::size_t n, double level);
double stieltjes_trapezoid_avx2(const double* f, const double* m, std::size_t n);
#endif

#if defined(SKOROKHOD_HAVE_NEON)
double superlevel_mass_neon(const double* g, const double* w, std::size_t n, double level);
double stieltjes_trapezoid_neon(const double* f, const double* m, std::size_t n);
#endif

// Fraction of a linear segment strictly above `level`; shared by every
// variant's scalar tail so that all variants agree term by term.
inline double segment_fraction(double g0, double g1, double level) {
  const double lo = g0 < g1 ? g0 : g1;
  const double hi = g0 < g1 ? g1 : g0;
  const double above = hi - level;
  if (!(above > 0.0)) return 0.0;
  const double below = level - lo;
  if (!(below > 0.0)) return 1.0;
  return 1.0 / (1.0 + below / above);
}

}  // namespace skorokhod::kernels::detail
