#pragma once

// Data-parallel inner loops shared by the operators. Every kernel has a
// portable scalar variant and, where the target supports it, a vector
// variant (AVX2 on x86-64, NEON on AArch64). The variant is picked once at
// runtime; tests call each variant explicitly and compare them.

#include <cstddef>
#include <span>
#include <string_view>

namespace skorokhod::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// The variant used by the dispatched entry points. Honours the
/// SKOROKHOD_ISA environment variable ("scalar", "avx2", "neon") when the
/// requested variant is available.
Isa active_isa() noexcept;

/// Mass of the superlevel set {g > level} over a chain of linear segments.
///
/// Segment j runs from g[j] to g[j+1] and carries weight w[j], spread
/// uniformly along it. The segment contributes w[j] times the fraction of its
/// length on which the linear interpolant is strictly above `level`.
/// A segment that is identically equal to `level` contributes nothing.
/// `g` may hold +inf (the unbounded workload); such endpoints are above every
/// finite level.
///
/// The per-segment fraction is evaluated as 1 / (1 + (level - gmin) / (gmax - level)),
/// a composition of correctly rounded monotone steps, so the result is
/// nondecreasing in every g[j] even in floating point.
///
/// Requires g.size() == w.size() + 1 (or both empty).
double superlevel_mass(std::span<const double> g, std::span<const double> w, double level);
double superlevel_mass(Isa isa, std::span<const double> g, std::span<const double> w, double level);

/// Trapezoidal Stieltjes sum  sum_j (f[j] + f[j+1]) / 2 * (m[j+1] - m[j]).
/// Exact for f and m linear on each segment.
double stieltjes_trapezoid(std::span<const double> f, std::span<const double> m);
double stieltjes_trapezoid(Isa isa, std::span<const double> f, std::span<const double> m);

}  // namespace skorokhod::kernels
