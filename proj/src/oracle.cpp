#include "skorokhod/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace skorokhod::oracle {

DenseGrid DenseGrid::over(const SignedPath& x, double step) {
  if (!(step > 0.0)) throw InputError("dense grid step must be positive");
  DenseGrid g;
  g.step_ = step;
  const double horizon = x.horizon();
  const auto n = static_cast<std::size_t>(std::ceil(horizon / step));
  for (std::size_t i = 0; i < n; ++i) g.points_.push_back(static_cast<double>(i) * step);
  g.points_.push_back(horizon);
  for (const Cumulative* f : {&x.arrivals(), &x.services()}) {
    g.points_.insert(g.points_.end(), f->knots().begin(), f->knots().end());
  }
  std::sort(g.points_.begin(), g.points_.end());
  g.points_.erase(std::unique(g.points_.begin(), g.points_.end()), g.points_.end());
  while (g.points_.back() > horizon) g.points_.pop_back();
  return g;
}

std::vector<double> brute_reflect(const SignedPath& x, const DenseGrid& g) {
  const auto& p = g.points();
  std::vector<double> xs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) xs[i] = x(p[i]);
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j <= i; ++j) best = std::max(best, xs[i] - xs[j]);
    q[i] = best;
  }
  return q;
}

double brute_theta(const PiecewiseLinear& q, const SignedPath& x, const DenseGrid& g, double t) {
  const auto& a = x.arrivals();
  const auto& c = x.services();
  const double ct = c.eval(t);
  double total = 0.0;
  const auto& p = g.points();
  for (std::size_t j = 0; j + 1 < p.size() && p[j] < t; ++j) {
    const double right = std::min(p[j + 1], t);
    const double mid = 0.5 * (p[j] + right);
    if (q(mid) > ct - c.eval(mid)) total += a.eval(right) - a.eval(p[j]);
  }
  return total;
}

double brute_sigma(const PiecewiseLinear& b, const SignedPath& x, const DenseGrid& g, double t) {
  const double ct = x.services().eval(t);
  if (x.arrivals().eval(t) + b(t) - ct <= 0.0) return t;
  double last = 0.0;
  for (double s : g.points()) {
    if (s > t) break;
    if (x.arrivals().eval(s) + b(s) - ct <= 0.0) last = s;
  }
  return last;
}

}  // namespace skorokhod::oracle
