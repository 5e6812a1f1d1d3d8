#pragma once

// One-sided reflection at zero:
//   Q*(t) = sup_{0<=s<=t} X(s,t] = X(t) - inf_{s<=t} X(s),
//   Y(t)  = -inf_{s<=t} (X(s) ^ 0),
// together with the last time sigma*(t) before t at which the content could
// be drained by the service accumulated since then.

#include <vector>

#include "skorokhod/measure.hpp"

namespace skorokhod {

/// Content and regulator sampled on a grid on which both are exactly linear
/// between points: the input knots plus every instant where X crosses below
/// its running minimum inside a segment (the content hits zero there).
struct ReflectionResult {
  Grid grid;
  std::vector<double> qstar;
  std::vector<double> regulator;

  PiecewiseLinear content() const { return PiecewiseLinear(grid, qstar); }
  PiecewiseLinear regulator_curve() const { return PiecewiseLinear(grid, regulator); }
  double qstar_at(double t) const;
  double regulator_at(double t) const;
};

ReflectionResult reflect(const SignedPath& x);

/// Reflection over `base` (which must contain every knot of x), started from
/// initial content q0 >= 0:  Q(t) = max(q0 + X(t), sup_{s<=t} X(s,t]).
ReflectionResult reflect(const SignedPath& x, const Grid& base, double initial_content = 0.0);

/// sigma*(t) = sup{s in [0,t] : Q*(s) <= C(s,t]}.
double sigma_star(const ReflectionResult& r, const SignedPath& x, double t);
/// sigma* at every point of r.grid.
std::vector<double> sigma_star_on_grid(const ReflectionResult& r, const SignedPath& x);

/// Q*(t) == max( sup_{u in [s,t]} X(u,t], Q*(s) + X(s,t] ) within tol.
bool check_semigroup(const SignedPath& x, const ReflectionResult& r, double s, double t, double tol);

/// Q*(s) >= C(s,t]  implies  Q*(t) == Q*(s) + X(s,t] within tol.
bool check_additive_continuation(const SignedPath& x, const ReflectionResult& r, double s, double t, double tol);

/// For s <= s2 <= t:  Q*(s) > C(s,t] + tol  implies  Q*(s2) > C(s2,t] - tol.
bool check_indicator_monotone(const SignedPath& x, const ReflectionResult& r, double s, double s2, double t,
                              double tol);

/// Q*(s) <= C(s,t] on [0, sigma*(t)] and Q*(s) > C(s,t] on (sigma*(t), t],
/// both within tol, at the probe point s.
bool check_sigma_bracket(const SignedPath& x, const ReflectionResult& r, double s, double t, double tol);

/// Trapezoidal Stieltjes integral of Q* against dY over the result grid.
double check_complementarity(const ReflectionResult& r);

}  // namespace skorokhod
