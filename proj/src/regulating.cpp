#include "skorokhod/regulating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skorokhod/reflection.hpp"

namespace skorokhod {

namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

struct Hit {
  double time;
  double value;
};

// Backward scan of g = a + b over [0, t_i] for its last point at or below
// `level`; returns that point and b there.
Hit last_hit(std::span<const double> t, std::span<const double> g, std::span<const double> b, std::size_t i,
             double level) {
  if (g[i] <= level) return {t[i], b[i]};
  for (std::size_t j = i; j-- > 0;) {
    if (g[j] <= level) {
      const double u = (level - g[j]) / (g[j + 1] - g[j]);
      return {std::min(t[j + 1], t[j] + u * (t[j + 1] - t[j])), interpolate(b[j], b[j + 1], u)};
    }
  }
  // g(0) = A(0) + B(0) = 0 <= C(t); unreachable for regulating input.
  throw DomainError("hitting set is empty");
}

Grid merged_grid(const PiecewiseLinear& b, const SignedPath& x) {
  if (b.horizon() != x.horizon()) throw InputError("function horizon differs from path horizon");
  return x.grid().merged(b.knots());
}

}  // namespace

RegulatingFunction::RegulatingFunction(PiecewiseLinear curve) : curve_(std::move(curve)) {
  if (curve_.values().front() != 0.0) throw InputError("regulating function must start at 0");
  for (double v : curve_.values()) {
    if (!std::isfinite(v)) throw InputError("regulating function must be finite");
  }
  if (!curve_.is_nondecreasing()) throw InputError("regulating function must be nondecreasing");
}

bool is_regulating(const PiecewiseLinear& b, const SignedPath& x, double tol) {
  if (b.values().front() != 0.0 || !b.is_nondecreasing()) return false;
  const Grid g = merged_grid(b, x);
  for (double t : g.points()) {
    if (x(t) + b(t) < -tol) return false;
  }
  return true;
}

double sigma_b(const RegulatingFunction& b, const SignedPath& x, double t) {
  const Grid g = merged_grid(b.curve(), x);
  std::vector<double> level_fn(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) level_fn[i] = x.arrivals().eval(g[i]) + b(g[i]);
  return last_at_or_below(PiecewiseLinear(g, std::move(level_fn)), x.services().eval(t), t);
}

std::vector<double> apply_phi(std::span<const double> b, const SampledPath& sp, std::vector<double>* hitting) {
  const std::size_t n = sp.size();
  if (b.size() != n) throw InputError("regulating samples do not match the grid");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = sp.arrivals[i] + b[i];
  std::vector<double> out(n);
  if (hitting) hitting->assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Hit h = last_hit(sp.grid.points(), g, b, i, sp.services[i]);
    out[i] = h.value;
    if (hitting) (*hitting)[i] = h.time;
  }
  return out;
}

RegulatingFunction phi(const RegulatingFunction& b, const SignedPath& x) {
  if (!is_regulating(b.curve(), x, x.tolerance())) throw InputError("phi needs a regulating function of the path");
  const SampledPath sp = SampledPath::build(x, merged_grid(b.curve(), x));
  return RegulatingFunction(PiecewiseLinear(sp.grid, apply_phi(b.curve().sample(sp.grid.points()), sp)));
}

IterationTrace iterate_phi(const SignedPath& x, const Grid& grid, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  if (max_iter == 0) throw InputError("max_iter must be positive");
  const SampledPath sp = SampledPath::build(x, grid);

  IterationTrace trace;
  trace.grid = sp.grid;
  trace.tolerance = tol;
  trace.iterates.push_back(sp.services);
  while (trace.iterates.size() < max_iter) {
    std::vector<double> next = apply_phi(trace.iterates.back(), sp, &trace.hitting_times);
    const double gap = sup_distance(next, trace.iterates.back());
    trace.iterates.push_back(std::move(next));
    trace.gaps.push_back(gap);
    if (gap <= tol) {
      trace.converged = true;
      break;
    }
  }
  if (trace.hitting_times.empty()) apply_phi(trace.iterates.back(), sp, &trace.hitting_times);
  return trace;
}

IterationTrace iterate_phi(const SignedPath& x, double tol, std::size_t max_iter) {
  return iterate_phi(x, reflect(x).grid, tol, max_iter);
}

RegulatingFunction u_from(const SignedPath& x) {
  const Grid knots = x.grid();
  const Grid grid = reflect(x).grid;
  std::vector<double> u(grid.size());
  double running = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // Between knots C - A is linear, so its running maximum only moves at knots.
    if (knots.find(grid[i]) != knots.size()) {
      running = std::max(running, x.services().eval(grid[i]) - x.arrivals().eval(grid[i]));
    }
    u[i] = running;
  }
  return RegulatingFunction(PiecewiseLinear(grid, std::move(u)));
}

bool check_fixed_point_dominated(const RegulatingFunction& b, const SignedPath& x, double tol) {
  const RegulatingFunction image = phi(b, x);
  const Grid g(std::vector<double>(image.curve().knots().begin(), image.curve().knots().end()));
  for (double t : g.points()) {
    if (std::abs(b(t) - image(t)) > tol) throw InputError("check_fixed_point_dominated requires b = Phi(b)");
  }
  const RegulatingFunction u = u_from(x);
  const Grid all = g.merged(u.curve().knots());
  for (double t : all.points()) {
    if (b(t) > u(t) + tol) return false;
  }
  return true;
}

double bridge_identity(const SignedPath& x, std::size_t k) {
  if (k == 0) throw InputError("bridge identity is stated for k >= 1");
  const Grid grid = reflect(x).grid;
  // Run exactly k steps unless a step reproduces its input bit for bit.
  const double exact = std::numeric_limits<double>::denorm_min();
  const IterationTrace q = iterate_theta(x, grid, exact, k);
  const IterationTrace b = iterate_phi(x, grid, exact, k);
  const SampledPath sp = SampledPath::build(x, grid);
  const auto qk = q.iterate(k);
  const auto bk = b.iterate(k);
  double worst = 0.0;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    worst = std::max(worst, std::abs(qk[i] + sp.services[i] - sp.arrivals[i] - bk[i]));
  }
  return worst;
}

}  // namespace skorokhod
