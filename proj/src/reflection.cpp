#include "skorokhod/reflection.hpp"

#include <algorithm>
#include <cmath>

#include "skorokhod/kernels.hpp"

namespace skorokhod {

double ReflectionResult::qstar_at(double t) const { return content()(t); }
double ReflectionResult::regulator_at(double t) const { return regulator_curve()(t); }

ReflectionResult reflect(const SignedPath& x) { return reflect(x, x.grid(), 0.0); }

ReflectionResult reflect(const SignedPath& x, const Grid& base, double initial_content) {
  if (!(initial_content >= 0.0) || !std::isfinite(initial_content)) throw InputError("initial content must be >= 0");
  if (base.horizon() != x.horizon()) throw InputError("grid horizon differs from path horizon");
  for (const Cumulative* f : {&x.arrivals(), &x.services()}) {
    for (double k : f->knots()) {
      if (base.find(k) == base.size()) throw InputError("reflection grid must contain every knot of the path");
    }
  }

  const auto pts = base.points();
  std::vector<double> xs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) xs[i] = x(pts[i]);

  ReflectionResult r;
  std::vector<double> times;
  times.reserve(pts.size());
  r.qstar.reserve(pts.size());
  r.regulator.reserve(pts.size());

  // floor(t) = min(-q0, min_{s<=t} X(s)); the content is X - floor. With
  // X(0) = 0 and q0 = 0 this is the usual running minimum.
  double floor = std::min(-initial_content, xs[0]);
  auto push = [&](double t, double q, double y) {
    times.push_back(t);
    r.qstar.push_back(q);
    r.regulator.push_back(y);
  };
  push(pts[0], xs[0] - floor, std::max(0.0, -initial_content - floor));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    // X is linear on the segment, so it can cross the floor at most once.
    if (xs[i] < floor && xs[i - 1] > floor) {
      const double u = (floor - xs[i - 1]) / (xs[i] - xs[i - 1]);
      const double tau = pts[i - 1] + u * (pts[i] - pts[i - 1]);
      if (tau > pts[i - 1] && tau < pts[i]) push(tau, 0.0, std::max(0.0, -initial_content - floor));
    }
    floor = std::min(floor, xs[i]);
    push(pts[i], xs[i] - floor, std::max(0.0, -initial_content - floor));
  }
  r.grid = Grid(std::move(times));
  return r;
}

double sigma_star(const ReflectionResult& r, const SignedPath& x, double t) {
  const auto pts = r.grid.points();
  std::vector<double> g(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) g[i] = r.qstar[i] + x.services().eval(pts[i]);
  return last_at_or_below(PiecewiseLinear(r.grid, std::move(g)), x.services().eval(t), t);
}

std::vector<double> sigma_star_on_grid(const ReflectionResult& r, const SignedPath& x) {
  const auto pts = r.grid.points();
  std::vector<double> c(pts.size()), g(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    c[i] = x.services().eval(pts[i]);
    g[i] = r.qstar[i] + c[i];
  }
  const PiecewiseLinear level_fn(r.grid, std::move(g));
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = last_at_or_below(level_fn, c[i], pts[i]);
  return out;
}

bool check_semigroup(const SignedPath& x, const ReflectionResult& r, double s, double t, double tol) {
  if (s > t) throw DomainError("check_semigroup needs s <= t");
  const double xt = x(t);
  // sup_{u in [s,t]} X(u,t] = X(t) - min_{u in [s,t]} X(u); X is linear between
  // knots so the minimum sits at s, t, or a knot in between.
  double min_x = std::min(x(s), xt);
  for (double k : r.grid.points()) {
    if (k > s && k < t) min_x = std::min(min_x, x(k));
  }
  const double rhs = std::max(xt - min_x, r.qstar_at(s) + x.increment(s, t));
  return std::abs(r.qstar_at(t) - rhs) <= tol;
}

bool check_additive_continuation(const SignedPath& x, const ReflectionResult& r, double s, double t, double tol) {
  if (s > t) throw DomainError("check_additive_continuation needs s <= t");
  const double qs = r.qstar_at(s);
  if (qs < x.services().increment(s, t)) return true;
  return std::abs(r.qstar_at(t) - (qs + x.increment(s, t))) <= tol;
}

bool check_indicator_monotone(const SignedPath& x, const ReflectionResult& r, double s, double s2, double t,
                              double tol) {
  if (!(s <= s2 && s2 <= t)) throw DomainError("check_indicator_monotone needs s <= s2 <= t");
  const auto& c = x.services();
  if (!(r.qstar_at(s) - c.increment(s, t) > tol)) return true;
  return r.qstar_at(s2) - c.increment(s2, t) > -tol;
}

bool check_sigma_bracket(const SignedPath& x, const ReflectionResult& r, double s, double t, double tol) {
  if (s > t) throw DomainError("check_sigma_bracket needs s <= t");
  const double sigma = sigma_star(r, x, t);
  const double gap = r.qstar_at(s) - x.services().increment(s, t);
  if (s <= sigma) return gap <= tol;
  return gap > -tol;
}

double check_complementarity(const ReflectionResult& r) { return kernels::stieltjes_trapezoid(r.qstar, r.regulator); }

}  // namespace skorokhod
