#pragma once

// Regulating functions of X = A - C: continuous nondecreasing B with
// B(0) = 0 and X(0,t] + B(t) >= 0. The operator
//
//   sigma_B(t) = sup{s in [0,t] : A(s) + B(s) <= C(t)},   Phi(B) = B o sigma_B,
//
// maps the class into itself, and the iteration B_1 = C, B_{k+1} = Phi(B_k)
// mirrors the Theta iteration through Q_k + C = A + B_k.

#include <cstddef>
#include <span>
#include <vector>

#include "skorokhod/integral_operator.hpp"
#include "skorokhod/measure.hpp"

namespace skorokhod {

/// Continuous, nondecreasing, starts at 0. Membership in the regulating
/// class of a particular path is checked separately by is_regulating.
class RegulatingFunction {
 public:
  explicit RegulatingFunction(PiecewiseLinear curve);

  double operator()(double t) const { return curve_(t); }
  const PiecewiseLinear& curve() const noexcept { return curve_; }
  double horizon() const { return curve_.horizon(); }

 private:
  PiecewiseLinear curve_;
};

/// b(0) = 0, b nondecreasing, and A + b - C >= -tol on the common grid.
bool is_regulating(const PiecewiseLinear& b, const SignedPath& x, double tol);

/// sigma_B(t). Returns t when A(t) + b(t) <= C(t).
double sigma_b(const RegulatingFunction& b, const SignedPath& x, double t);

/// Phi(b) sampled on the common grid of b and x. Throws InputError when b is
/// not regulating for x.
RegulatingFunction phi(const RegulatingFunction& b, const SignedPath& x);

/// Phi on grid samples: b given on sp.grid, result on sp.grid. When
/// `hitting` is non-null it receives sigma_B at every grid point.
std::vector<double> apply_phi(std::span<const double> b, const SampledPath& sp, std::vector<double>* hitting = nullptr);

/// B_1 = C, B_{k+1} = Phi(B_k) on `grid`, stopping as iterate_theta does.
/// trace.hitting_times holds sigma of the last applied iterate.
IterationTrace iterate_phi(const SignedPath& x, const Grid& grid, double tol, std::size_t max_iter = 10000);
/// Same, on the reflection grid of x.
IterationTrace iterate_phi(const SignedPath& x, double tol, std::size_t max_iter = 10000);

/// U(t) = sup_{s<=t} (C(s) - A(s)) = Q*(t) - X(t), on the reflection grid.
RegulatingFunction u_from(const SignedPath& x);

/// Requires sup|b - Phi(b)| <= tol; true iff b <= U + tol pointwise.
bool check_fixed_point_dominated(const RegulatingFunction& b, const SignedPath& x, double tol);

/// Runs both iterations for k steps on the reflection grid and returns
/// sup |Q_k + C - A - B_k|.
double bridge_identity(const SignedPath& x, std::size_t k);

}  // namespace skorokhod
