#include "skorokhod/measure.hpp"

#include <cstdio>

#include <algorithm>
#include <cmath>
#include <limits>

#include "skorokhod/kernels.hpp"

namespace skorokhod {

namespace {

void check_knots(std::span<const double> knots) {
  if (knots.size() < 2) throw InputError("need at least two knots");
  if (knots.front() != 0.0) throw InputError("first knot must be 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i])) throw InputError("knots must be finite");
    if (i > 0 && !(knots[i] > knots[i - 1])) throw InputError("knots must be strictly increasing");
  }
}

std::string at(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- Grid

Grid::Grid(std::vector<double> points) : points_(std::move(points)) { check_knots(points_); }

Grid Grid::uniform(double horizon, std::size_t segments) {
  if (!(horizon > 0.0) || segments == 0) throw InputError("uniform grid needs positive horizon and segments");
  std::vector<double> p(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) p[i] = horizon * static_cast<double>(i) / static_cast<double>(segments);
  p.back() = horizon;
  return Grid(std::move(p));
}

std::size_t Grid::segment_index(double t) const {
  if (!(t >= 0.0 && t <= horizon())) throw DomainError("time outside grid: " + at(t));
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  std::size_t j = static_cast<std::size_t>(it - points_.begin());
  j = j == 0 ? 0 : j - 1;
  return std::min(j, points_.size() - 2);
}

std::size_t Grid::find(double t) const noexcept {
  auto it = std::lower_bound(points_.begin(), points_.end(), t);
  if (it != points_.end() && *it == t) return static_cast<std::size_t>(it - points_.begin());
  return points_.size();
}

Grid Grid::merged(std::span<const double> extra) const {
  std::vector<double> all(points_);
  for (double t : extra) {
    if (!(t >= 0.0 && t <= horizon())) throw DomainError("merge point outside grid: " + at(t));
    all.push_back(t);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return Grid(std::move(all));
}

Grid Grid::oversampled(std::size_t factor) const {
  if (factor == 0) throw InputError("oversampling factor must be positive");
  if (factor == 1) return *this;
  std::vector<double> p;
  p.reserve((points_.size() - 1) * factor + 1);
  for (std::size_t j = 0; j + 1 < points_.size(); ++j) {
    const double a = points_[j], b = points_[j + 1];
    p.push_back(a);
    for (std::size_t k = 1; k < factor; ++k) {
      const double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(factor);
      if (t > p.back() && t < b) p.push_back(t);
    }
  }
  p.push_back(points_.back());
  return Grid(std::move(p));
}

// ---------------------------------------------------------------- interpolation

double interpolate(double v0, double v1, double u) noexcept {
  if (v0 == v1) return v0;
  return std::lerp(v0, v1, u);
}

double interpolate_at(std::span<const double> knots, std::span<const double> values, double t) noexcept {
  auto it = std::upper_bound(knots.begin(), knots.end(), t);
  std::size_t j = static_cast<std::size_t>(it - knots.begin());
  if (j == 0) return values.front();
  if (j == knots.size()) return values.back();
  --j;
  if (t == knots[j]) return values[j];
  const double u = (t - knots[j]) / (knots[j + 1] - knots[j]);
  return interpolate(values[j], values[j + 1], u);
}

// ---------------------------------------------------------------- PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  check_knots(knots_);
  if (values_.size() != knots_.size()) throw InputError("knots and values differ in length");
  for (double v : values_) {
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) throw InputError("values must not be NaN or -inf");
  }
}

PiecewiseLinear::PiecewiseLinear(const Grid& grid, std::vector<double> values)
    : PiecewiseLinear(std::vector<double>(grid.points().begin(), grid.points().end()), std::move(values)) {}

PiecewiseLinear PiecewiseLinear::constant(double value, double horizon) {
  return PiecewiseLinear({0.0, horizon}, {value, value});
}

double PiecewiseLinear::operator()(double t) const {
  if (!(t >= 0.0 && t <= horizon())) throw DomainError("time outside [0, horizon]: " + at(t));
  return interpolate_at(knots_, values_, t);
}

std::vector<double> PiecewiseLinear::sample(std::span<const double> points) const {
  std::vector<double> out;
  out.reserve(points.size());
  for (double t : points) out.push_back((*this)(t));
  return out;
}

bool PiecewiseLinear::is_nondecreasing() const noexcept {
  return std::is_sorted(values_.begin(), values_.end());
}

// ---------------------------------------------------------------- Cumulative

Cumulative Cumulative::from_breakpoints(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() != values.size()) throw InputError("knots and values differ in length");
  if (knots.size() < 2) throw InputError("need at least two breakpoints");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i] == knots[i - 1]) throw InputError("duplicate knot at t=" + at(knots[i]));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("cumulative values must be finite");
  }
  if (values.front() != 0.0) throw InputError("cumulative must start at 0");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) throw InputError("cumulative decreases after t=" + at(knots[i - 1]));
  }
  return Cumulative(PiecewiseLinear(std::move(knots), std::move(values)));
}

Cumulative Cumulative::linear(double rate, double horizon) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw InputError("rate must be finite and nonnegative");
  return from_breakpoints({0.0, horizon}, {0.0, rate * horizon});
}

Cumulative Cumulative::zero(double horizon) { return from_breakpoints({0.0, horizon}, {0.0, 0.0}); }

double Cumulative::eval(double t) const { return curve_(t); }

double Cumulative::increment(double s, double t) const {
  if (s > t) throw DomainError("increment needs s <= t");
  return eval(t) - eval(s);
}

double Cumulative::max_slope() const {
  double slope = 0.0;
  const auto k = knots();
  const auto v = values();
  for (std::size_t i = 0; i + 1 < k.size(); ++i) slope = std::max(slope, (v[i + 1] - v[i]) / (k[i + 1] - k[i]));
  return slope;
}

Cumulative Cumulative::scaled(double factor) const {
  if (!(factor >= 0.0)) throw InputError("scale factor must be nonnegative");
  std::vector<double> v(values().begin(), values().end());
  for (double& x : v) x *= factor;
  return from_breakpoints(std::vector<double>(knots().begin(), knots().end()), std::move(v));
}

// ---------------------------------------------------------------- free functions

Grid refine(std::span<const Cumulative> fs) {
  if (fs.empty()) throw InputError("refine needs at least one cumulative");
  const double horizon = fs.front().horizon();
  std::vector<double> all;
  for (const auto& f : fs) {
    if (f.horizon() != horizon) throw InputError("horizon mismatch: " + at(f.horizon()) + " vs " + at(horizon));
    all.insert(all.end(), f.knots().begin(), f.knots().end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return Grid(std::move(all));
}

double superlevel_measure(const Cumulative& f, const PiecewiseLinear& g, double level, double t) {
  if (!(t >= 0.0 && t <= f.horizon())) throw DomainError("time outside [0, horizon]: " + at(t));
  if (g.horizon() < t) throw DomainError("level function does not cover [0, t]");
  std::vector<double> pts;
  for (double k : f.knots()) if (k < t) pts.push_back(k);
  for (double k : g.knots()) if (k < t) pts.push_back(k);
  pts.push_back(t);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;
  const std::vector<double> gv = g.sample(pts);
  std::vector<double> w(pts.size() - 1);
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) w[j] = f.eval(pts[j + 1]) - f.eval(pts[j]);
  return kernels::superlevel_mass(gv, w, level);
}

double last_at_or_below(const PiecewiseLinear& g, double level, double t) {
  if (!(t >= 0.0 && t <= g.horizon())) throw DomainError("time outside [0, horizon]: " + at(t));
  double right = t;
  double g_right = g(t);
  if (g_right <= level) return right;
  const auto k = g.knots();
  const auto v = g.values();
  auto it = std::lower_bound(k.begin(), k.end(), t);
  std::size_t j = static_cast<std::size_t>(it - k.begin());  // first knot >= t
  while (j > 0) {
    --j;
    if (k[j] == right) continue;
    const double left = k[j];
    const double g_left = v[j];
    if (g_left <= level) {
      const double u = (level - g_left) / (g_right - g_left);
      return std::min(right, left + u * (right - left));
    }
    right = left;
    g_right = g_left;
  }
  throw DomainError("level lies below the function on all of [0, t]");
}

// ---------------------------------------------------------------- SignedPath

SignedPath::SignedPath(Cumulative arrivals, Cumulative services)
    : arrivals_(std::move(arrivals)), services_(std::move(services)) {
  if (arrivals_.horizon() != services_.horizon()) {
    throw InputError("horizon mismatch: arrivals end at " + at(arrivals_.horizon()) + ", services at " +
                     at(services_.horizon()));
  }
}

double SignedPath::increment(double s, double t) const {
  if (s > t) throw DomainError("increment needs s <= t");
  return (*this)(t) - (*this)(s);
}

Grid SignedPath::grid() const {
  const Cumulative parts[] = {arrivals_, services_};
  return refine(parts);
}

SignedPath SignedPath::suffix(double t0) const {
  if (!(t0 >= 0.0 && t0 < horizon())) throw DomainError("restart time must lie in [0, horizon)");
  auto shift = [t0](const Cumulative& f) {
    std::vector<double> k{0.0}, v{0.0};
    const double base = f.eval(t0);
    for (std::size_t i = 0; i < f.knots().size(); ++i) {
      const double ti = f.knots()[i];
      if (ti <= t0) continue;
      k.push_back(ti - t0);
      v.push_back(std::max(0.0, f.values()[i] - base));
    }
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = std::max(v[i], v[i - 1]);
    return Cumulative::from_breakpoints(std::move(k), std::move(v));
  };
  // Shifting by t0 rounds the knots separately for A and C; pin both horizons.
  Cumulative a = shift(arrivals_), c = shift(services_);
  if (a.horizon() != c.horizon()) throw InputError("suffix horizons diverged after shift");
  return SignedPath(std::move(a), std::move(c));
}

SignedPath SignedPath::scaled(double factor) const {
  return SignedPath(arrivals_.scaled(factor), services_.scaled(factor));
}

// ---------------------------------------------------------------- SampledPath

SampledPath SampledPath::build(const SignedPath& x, Grid grid) {
  if (grid.horizon() != x.horizon()) throw InputError("grid horizon differs from path horizon");
  SampledPath sp;
  sp.arrivals = x.arrivals().curve().sample(grid.points());
  sp.services = x.services().curve().sample(grid.points());
  sp.arrival_mass.resize(grid.size() - 1);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) sp.arrival_mass[j] = sp.arrivals[j + 1] - sp.arrivals[j];
  sp.grid = std::move(grid);
  return sp;
}

}  // namespace skorokhod
