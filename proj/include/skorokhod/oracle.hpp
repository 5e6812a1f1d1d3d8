#pragma once

// Brute-force reference computations. They share no code with the fast
// paths beyond point evaluation of the inputs, and favour obviousness over
// speed (O(n^2) is fine here).

#include <vector>

#include "skorokhod/measure.hpp"

namespace skorokhod::oracle {

/// Uniform points of spacing `step` over [0, T], merged with every knot of
/// the path so that the grid refines it.
class DenseGrid {
 public:
  static DenseGrid over(const SignedPath& x, double step);

  double step() const noexcept { return step_; }
  const std::vector<double>& points() const noexcept { return points_; }

 private:
  double step_ = 0.0;
  std::vector<double> points_;
};

/// Q(t_i) = max_{j<=i} (X(t_i) - X(t_j)) by exhaustive search.
std::vector<double> brute_reflect(const SignedPath& x, const DenseGrid& g);

/// Riemann sum of 1(q(m) > C(m,t]) dA over the cells of g inside [0, t],
/// with the indicator taken at each cell midpoint m. First order in step.
double brute_theta(const PiecewiseLinear& q, const SignedPath& x, const DenseGrid& g, double t);

/// Last grid point s <= t with A(s) + b(s) - C(t) <= 0, or t itself when it
/// qualifies. Within one step of the exact hitting time.
double brute_sigma(const PiecewiseLinear& b, const SignedPath& x, const DenseGrid& g, double t);

}  // namespace skorokhod::oracle
