#include "skorokhod/integral_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skorokhod/kernels.hpp"
#include "skorokhod/reflection.hpp"

namespace skorokhod {

namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void require_nonnegative(const PiecewiseLinear& q) {
  for (double v : q.values()) {
    if (v < 0.0) throw InputError("workload function must be nonnegative");
  }
}

Grid common_grid(const PiecewiseLinear& q, const SignedPath& x, std::span<const double> extra = {}) {
  if (q.horizon() != x.horizon()) throw InputError("function horizon differs from path horizon");
  Grid g = x.grid().merged(q.knots());
  return extra.empty() ? g : g.merged(extra);
}

}  // namespace

std::span<const double> IterationTrace::iterate(std::size_t k) const {
  if (k == 0) throw InputError("iterates are numbered from 1");
  return iterates[std::min(k, iterates.size()) - 1];
}

std::vector<double> IterationTrace::gap_ratios() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < gaps.size(); ++k) out.push_back(gaps[k - 1] > 0.0 ? gaps[k] / gaps[k - 1] : 0.0);
  return out;
}

PiecewiseLinear unbounded_workload(double horizon) {
  return PiecewiseLinear::constant(std::numeric_limits<double>::infinity(), horizon);
}

std::vector<double> apply_theta(std::span<const double> q, const SampledPath& sp) {
  const std::size_t n = sp.size();
  if (q.size() != n) throw InputError("workload samples do not match the grid");
  std::vector<double> level_fn(n);
  for (std::size_t i = 0; i < n; ++i) level_fn[i] = q[i] + sp.services[i];
  std::vector<double> out(n);
  const std::span<const double> g(level_fn);
  const std::span<const double> w(sp.arrival_mass);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = kernels::superlevel_mass(g.first(i + 1), w.first(i), sp.services[i]);
  }
  return out;
}

double theta(const PiecewiseLinear& q, const SignedPath& x, double t) {
  const double ts[] = {t};
  const Grid g = common_grid(q, x, ts);
  const std::size_t i = g.find(t);
  require_nonnegative(q);
  const SampledPath sp = SampledPath::build(x, g);
  const std::vector<double> qs = q.sample(g.points());
  std::vector<double> level_fn(i + 1);
  for (std::size_t j = 0; j <= i; ++j) level_fn[j] = qs[j] + sp.services[j];
  return kernels::superlevel_mass(level_fn, std::span<const double>(sp.arrival_mass).first(i), sp.services[i]);
}

std::vector<double> theta(const PiecewiseLinear& q, const SignedPath& x, const Grid& out) {
  require_nonnegative(q);
  const Grid g = common_grid(q, x, out.points());
  const SampledPath sp = SampledPath::build(x, g);
  const std::vector<double> all = apply_theta(q.sample(g.points()), sp);
  std::vector<double> result;
  result.reserve(out.size());
  for (double t : out.points()) result.push_back(all[g.find(t)]);
  return result;
}

double default_theta_tolerance(const SignedPath& x) { return 1e-9 * (1.0 + x.arrivals().total()); }

IterationTrace iterate_theta(const SignedPath& x, const Grid& grid, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  if (max_iter == 0) throw InputError("max_iter must be positive");
  const SampledPath sp = SampledPath::build(x, grid);

  IterationTrace trace;
  trace.grid = sp.grid;
  trace.tolerance = tol;
  // Q_0 = +inf is never stored; Q_1 is its image, computed by the same kernel
  // as every later iterate so that the whole trace shares one rounding path.
  const std::vector<double> unbounded(sp.size(), std::numeric_limits<double>::infinity());
  trace.iterates.push_back(apply_theta(unbounded, sp));
  while (trace.iterates.size() < max_iter) {
    std::vector<double> next = apply_theta(trace.iterates.back(), sp);
    const double gap = sup_distance(next, trace.iterates.back());
    trace.iterates.push_back(std::move(next));
    trace.gaps.push_back(gap);
    if (gap <= tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

IterationTrace iterate_theta(const SignedPath& x, double tol, std::size_t max_iter) {
  return iterate_theta(x, reflect(x).grid, tol, max_iter);
}

bool check_theta_monotone(const PiecewiseLinear& q1, const PiecewiseLinear& q2, const SignedPath& x) {
  require_nonnegative(q1);
  require_nonnegative(q2);
  if (q1.horizon() != q2.horizon()) throw InputError("functions have different horizons");
  const Grid g = common_grid(q1, x, q2.knots());
  const std::vector<double> a = q1.sample(g.points());
  const std::vector<double> b = q2.sample(g.points());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) throw InputError("check_theta_monotone requires q1 <= q2");
  }
  const SampledPath sp = SampledPath::build(x, g);
  const std::vector<double> ta = apply_theta(a, sp);
  const std::vector<double> tb = apply_theta(b, sp);
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i] > tb[i]) return false;
  }
  return true;
}

double check_fixed_point(const PiecewiseLinear& q, const SignedPath& x) {
  require_nonnegative(q);
  const Grid g = common_grid(q, x);
  const SampledPath sp = SampledPath::build(x, g);
  const std::vector<double> qs = q.sample(g.points());
  return sup_distance(qs, apply_theta(qs, sp));
}

}  // namespace skorokhod
