#pragma once

// The integral-representation operator
//
//   Theta(Q)(t) = A-measure of {s in [0,t] : Q(s) > C(s,t]}
//
// and its monotone iteration Q_1 = A, Q_{k+1} = Theta(Q_k), which decreases to
// the maximal solution of Q = Theta(Q), i.e. to the reflected content Q*.

#include <cstddef>
#include <span>
#include <vector>

#include "skorokhod/measure.hpp"

namespace skorokhod {

/// Grid-sampled iterates of a monotone fixed-point scheme.
struct IterationTrace {
  Grid grid;
  /// iterates[k-1] holds the k-th iterate sampled on `grid` (k starts at 1).
  std::vector<std::vector<double>> iterates;
  /// gaps[k-1] = sup-norm distance between iterates k and k+1.
  std::vector<double> gaps;
  bool converged = false;
  double tolerance = 0.0;
  /// Hitting times sigma(t) of the last operator application, when the
  /// scheme has them (Phi does; Theta does not).
  std::vector<double> hitting_times;

  std::size_t iterations() const noexcept { return iterates.size(); }
  std::span<const double> limit() const { return iterates.back(); }
  /// Iterate k (1-based), or the last one if the run stopped earlier.
  std::span<const double> iterate(std::size_t k) const;
  /// Ratios gaps[k] / gaps[k-1]; an empirical contraction rate, nothing is assumed.
  std::vector<double> gap_ratios() const;
};

/// The unbounded workload Q_0 = +inf. Theta maps it to A.
PiecewiseLinear unbounded_workload(double horizon);

/// Theta(q) at every point of sp.grid, with q given by its samples on
/// sp.grid. Samples may be +inf. The rewrite 1(q(s) > C(t) - C(s)) =
/// 1(q(s) + C(s) > C(t)) turns each value into a superlevel mass.
std::vector<double> apply_theta(std::span<const double> q, const SampledPath& sp);

/// Theta(q)(t) at a single time.
double theta(const PiecewiseLinear& q, const SignedPath& x, double t);
/// Theta(q) at every point of `out`.
std::vector<double> theta(const PiecewiseLinear& q, const SignedPath& x, const Grid& out);

/// Default stopping tolerance 1e-9 * (1 + A(T)).
double default_theta_tolerance(const SignedPath& x);

/// Q_1 = Theta(+inf) = A, Q_{k+1} = Theta(Q_k), sampled on `grid`, until the
/// sup-norm gap is <= tol or max_iter iterates exist. A run that hits
/// max_iter is reported with converged = false.
IterationTrace iterate_theta(const SignedPath& x, const Grid& grid, double tol, std::size_t max_iter = 10000);
/// Same, on the reflection grid of x (its knots plus zero-hitting instants).
IterationTrace iterate_theta(const SignedPath& x, double tol, std::size_t max_iter = 10000);

/// Requires q1 <= q2 pointwise; true iff Theta(q1) <= Theta(q2) at every
/// point of the common grid.
bool check_theta_monotone(const PiecewiseLinear& q1, const PiecewiseLinear& q2, const SignedPath& x);

/// sup-norm of q - Theta(q) over the common grid of q and x.
double check_fixed_point(const PiecewiseLinear& q, const SignedPath& x);

}  // namespace skorokhod
