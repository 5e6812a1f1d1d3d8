#include "skorokhod/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "skorokhod/kernels.hpp"
#include "skorokhod/reflection.hpp"

namespace skorokhod {

namespace {

// Independent streams per purpose derived from one user seed.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

constexpr std::uint32_t kArrivalStream = 1;
constexpr std::uint32_t kFuzzStream = 2;

SignedPath on_off_path(const Scenario& sc) {
  auto rng = make_rng(sc.seed, kArrivalStream);
  std::exponential_distribution<double> on_len(1.0 / sc.mean_on);
  std::exponential_distribution<double> off_len(1.0 / sc.mean_off);
  const double peak = sc.arrival_rate * (sc.mean_on + sc.mean_off) / sc.mean_on;
  // Start from the stationary on/off mix.
  bool on = std::bernoulli_distribution(sc.mean_on / (sc.mean_on + sc.mean_off))(rng);

  std::vector<double> knots{0.0}, values{0.0};
  double t = 0.0, mass = 0.0;
  while (t < sc.horizon) {
    const double len = on ? on_len(rng) : off_len(rng);
    const double next = std::min(sc.horizon, t + len);
    if (next > t) {
      if (on) mass += peak * (next - t);
      knots.push_back(next);
      values.push_back(mass);
      t = next;
    }
    on = !on;
  }
  knots.back() = sc.horizon;
  return SignedPath(Cumulative::from_breakpoints(std::move(knots), std::move(values)),
                    Cumulative::linear(sc.service_rate, sc.horizon));
}

SignedPath piecewise_uniform_path(const Scenario& sc) {
  auto rng = make_rng(sc.seed, kArrivalStream);
  std::uniform_real_distribution<double> rate(0.0, 2.0 * sc.arrival_rate);
  std::vector<double> knots{0.0}, values{0.0};
  const auto pieces = static_cast<std::size_t>(std::ceil(sc.horizon / sc.grid_step));
  double mass = 0.0;
  for (std::size_t i = 1; i <= pieces; ++i) {
    const double t = std::min(sc.horizon, static_cast<double>(i) * sc.grid_step);
    if (!(t > knots.back())) continue;
    mass += rate(rng) * (t - knots.back());
    knots.push_back(t);
    values.push_back(mass);
  }
  knots.back() = sc.horizon;
  return SignedPath(Cumulative::from_breakpoints(std::move(knots), std::move(values)),
                    Cumulative::linear(sc.service_rate, sc.horizon));
}

}  // namespace

std::string_view to_string(SourceModel m) noexcept {
  switch (m) {
    case SourceModel::constant_rate: return "constant_rate";
    case SourceModel::on_off: return "on_off";
    case SourceModel::piecewise_uniform_rate: return "piecewise_uniform_rate";
  }
  return "unknown";
}

SourceModel parse_source_model(std::string_view name) {
  for (SourceModel m : {SourceModel::constant_rate, SourceModel::on_off, SourceModel::piecewise_uniform_rate}) {
    if (name == to_string(m)) return m;
  }
  throw InputError("unknown source model: " + std::string(name));
}

void Scenario::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(arrival_rate)) throw InputError("arrival rate must be positive");
  if (!positive(service_rate)) throw InputError("service rate must be positive");
  if (!positive(horizon)) throw InputError("horizon must be positive");
  if (!positive(grid_step)) throw InputError("grid_step must be positive");
  if (!positive(mean_on) || !positive(mean_off)) throw InputError("on/off means must be positive");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) throw InputError("warmup_fraction must lie in [0, 1)");
}

SignedPath generate(const Scenario& sc) {
  sc.validate();
  switch (sc.source_model) {
    case SourceModel::constant_rate:
      return SignedPath(Cumulative::linear(sc.arrival_rate, sc.horizon), Cumulative::linear(sc.service_rate, sc.horizon));
    case SourceModel::on_off: return on_off_path(sc);
    case SourceModel::piecewise_uniform_rate: return piecewise_uniform_path(sc);
  }
  throw InputError("unknown source model");
}

SignedPath fuzz_path(std::uint64_t seed, std::size_t max_knots) {
  if (max_knots < 2) throw InputError("fuzz paths need at least two knots");
  auto rng = make_rng(seed, kFuzzStream);
  const double horizon = std::uniform_real_distribution<double>(1.0, 10.0)(rng);
  auto one = [&] {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_knots)(rng);
    std::uniform_real_distribution<double> when(0.0, horizon);
    std::vector<double> knots{0.0, horizon};
    for (std::size_t i = 2; i < n; ++i) knots.push_back(when(rng));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::bernoulli_distribution flat(0.2);
    std::exponential_distribution<double> rate(1.0);
    std::vector<double> values{0.0};
    for (std::size_t i = 1; i < knots.size(); ++i) {
      const double inc = flat(rng) ? 0.0 : rate(rng) * (knots[i] - knots[i - 1]);
      values.push_back(values.back() + inc);
    }
    return Cumulative::from_breakpoints(std::move(knots), std::move(values));
  };
  Cumulative a = one();
  Cumulative c = one();
  return SignedPath(std::move(a), std::move(c));
}

namespace {

void require_stable(const Scenario& sc) {
  sc.validate();
  if (!(sc.arrival_rate < sc.service_rate)) {
    throw InputError("no stationary regime: arrival rate a must be below service rate c (a < c)");
  }
}

}  // namespace

StationaryReport run_stationary(const Scenario& sc) {
  require_stable(sc);
  return run_stationary(sc, generate(sc));
}

StationaryReport run_stationary(const Scenario& sc, const SignedPath& path) {
  require_stable(sc);
  const double horizon = path.horizon();
  const double t0 = sc.warmup_fraction * horizon;
  if (horizon - t0 < sc.grid_step) throw InputError("horizon too short for the warmup fraction");

  const double cut[] = {t0};
  const ReflectionResult r = reflect(path, path.grid().merged(cut));
  const SampledPath sp = SampledPath::build(path, r.grid);
  const std::size_t i0 = r.grid.find(t0);
  const std::size_t n = r.grid.size();

  const std::span<const double> q = std::span<const double>(r.qstar).subspan(i0);
  const double time_integral = kernels::stieltjes_trapezoid(q, r.grid.points().subspan(i0));
  const double arrival_integral = kernels::stieltjes_trapezoid(q, std::span<const double>(sp.arrivals).subspan(i0));
  const double arrival_mass = sp.arrivals.back() - sp.arrivals[i0];

  StationaryReport rep;
  rep.time_avg_q = time_integral / (horizon - t0);
  rep.palm_avg_q = arrival_mass > 0.0 ? arrival_integral / arrival_mass : 0.0;
  rep.peak_q = *std::max_element(r.qstar.begin(), r.qstar.end());
  const double scale = sc.arrival_rate / sc.service_rate;
  if (rep.palm_avg_q == 0.0 && rep.time_avg_q == 0.0) {
    rep.littles_ratio = 1.0;
    rep.degenerate = true;
  } else if (rep.palm_avg_q == 0.0) {
    rep.littles_ratio = std::numeric_limits<double>::infinity();
  } else {
    rep.littles_ratio = rep.time_avg_q / (scale * rep.palm_avg_q);
  }

  // Q* + C at every grid point; Theta(Q*)(t_i) is the arrival mass where it exceeds C(t_i).
  std::vector<double> level_fn(n);
  for (std::size_t i = 0; i < n; ++i) level_fn[i] = r.qstar[i] + sp.services[i];
  const std::size_t samples = std::max<std::size_t>(1, std::min(sc.residual_samples, n - i0));
  double residual = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t i = samples == 1 ? n - 1 : i0 + (n - 1 - i0) * k / (samples - 1);
    const double theta = kernels::superlevel_mass(std::span<const double>(level_fn).first(i + 1),
                                                  std::span<const double>(sp.arrival_mass).first(i), sp.services[i]);
    residual = std::max(residual, std::abs(r.qstar[i] - theta));
  }
  rep.integral_rep_residual = residual;
  return rep;
}

}  // namespace skorokhod
