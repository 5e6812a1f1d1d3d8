#pragma once

// Continuous piecewise-linear functions on [0, T] and the atomless measures
// they describe. A Cumulative F stands for the measure F(s,t] = F(t) - F(s);
// a SignedPath is a pair (A, C) of them with X = A - C.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skorokhod {

/// Malformed input: bad breakpoints, mismatched horizons, violated
/// preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time outside [0, horizon], or s > t for an interval.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Strictly increasing times starting at 0.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<double> points);

  static Grid uniform(double horizon, std::size_t segments);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double horizon() const { return points_.back(); }

  /// Index j with points[j] <= t <= points[j+1]; the last segment owns the horizon.
  std::size_t segment_index(double t) const;
  /// Position of an exact grid point, or size() when t is not on the grid.
  std::size_t find(double t) const noexcept;

  /// Sorted union with `extra`; every extra point must lie in [0, horizon].
  Grid merged(std::span<const double> extra) const;
  /// Splits each segment into `factor` equal parts.
  Grid oversampled(std::size_t factor) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<double> points_;
};

/// Continuous function, linear between knots. Values may be +inf (used for
/// the unbounded workload) but never NaN.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> knots, std::vector<double> values);
  PiecewiseLinear(const Grid& grid, std::vector<double> values);

  static PiecewiseLinear constant(double value, double horizon);

  double operator()(double t) const;
  std::vector<double> sample(std::span<const double> points) const;

  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }
  double horizon() const { return knots_.back(); }

  bool is_nondecreasing() const noexcept;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// Linear interpolation that returns the endpoint value exactly at u = 0 and
/// u = 1, is monotone in u, and treats equal (possibly infinite) endpoints as
/// constant.
double interpolate(double v0, double v1, double u) noexcept;

/// Evaluates the interpolant through (knots, values) at t. Assumes t is in
/// [knots.front(), knots.back()].
double interpolate_at(std::span<const double> knots, std::span<const double> values, double t) noexcept;

/// Cumulative function of a nonnegative atomless measure on [0, T]:
/// continuous, nondecreasing, F(0) = 0.
class Cumulative {
 public:
  static Cumulative from_breakpoints(std::vector<double> knots, std::vector<double> values);
  static Cumulative linear(double rate, double horizon);
  static Cumulative zero(double horizon);

  double eval(double t) const;
  /// F(s,t] = F(t) - F(s).
  double increment(double s, double t) const;

  double horizon() const { return curve_.horizon(); }
  std::span<const double> knots() const noexcept { return curve_.knots(); }
  std::span<const double> values() const noexcept { return curve_.values(); }
  const PiecewiseLinear& curve() const noexcept { return curve_; }
  double total() const { return curve_.values().back(); }
  double max_slope() const;

  Cumulative scaled(double factor) const;

 private:
  explicit Cumulative(PiecewiseLinear curve) : curve_(std::move(curve)) {}
  PiecewiseLinear curve_;
};

/// Sorted, deduplicated union of the knots. Horizons must agree exactly.
Grid refine(std::span<const Cumulative> fs);

/// F-measure of {s in [0, t] : G(s) > level}. Crossings of G with the level
/// are located by linear interpolation inside each segment of the common
/// refinement of F and G. G must cover [0, t].
double superlevel_measure(const Cumulative& f, const PiecewiseLinear& g, double level, double t);

/// sup{s in [0, t] : g(s) <= level}, found by scanning segments backwards from
/// t. Flat stretches at the level resolve to their rightmost point.
/// Throws DomainError when g > level on all of [0, t].
double last_at_or_below(const PiecewiseLinear& g, double level, double t);

/// X = A - C on a common horizon. A and C need not be the positive and
/// negative parts of X.
class SignedPath {
 public:
  SignedPath(Cumulative arrivals, Cumulative services);

  const Cumulative& arrivals() const noexcept { return arrivals_; }
  const Cumulative& services() const noexcept { return services_; }
  double horizon() const { return arrivals_.horizon(); }

  /// X(t) = X(0,t].
  double operator()(double t) const { return arrivals_.eval(t) - services_.eval(t); }
  /// X(s,t].
  double increment(double s, double t) const;

  /// Common refinement of the arrival and service knots.
  Grid grid() const;

  /// The path restarted at t0, re-based so that both parts start at 0.
  SignedPath suffix(double t0) const;
  SignedPath scaled(double factor) const;

  /// Absolute tolerance for identity checks: scale * (1 + A(T) + C(T)).
  double tolerance(double scale = 1e-9) const { return scale * (1.0 + arrivals_.total() + services_.total()); }

 private:
  Cumulative arrivals_;
  Cumulative services_;
};

/// A and C sampled on a grid that refines both, plus the per-segment arrival
/// mass. The working representation of the operators.
struct SampledPath {
  Grid grid;
  std::vector<double> arrivals;
  std::vector<double> services;
  std::vector<double> arrival_mass;

  static SampledPath build(const SignedPath& x, Grid grid);
  std::size_t size() const noexcept { return grid.size(); }
};

}  // namespace skorokhod
