#pragma once

// Random fluid-queue inputs and long-horizon stationary experiments. The
// service measure is always c times Lebesgue; the arrival measure follows the
// chosen source model with long-run rate a.

#include <cstdint>
#include <string>
#include <string_view>

#include "skorokhod/measure.hpp"

namespace skorokhod {

enum class SourceModel { constant_rate, on_off, piecewise_uniform_rate };

std::string_view to_string(SourceModel m) noexcept;
SourceModel parse_source_model(std::string_view name);

struct Scenario {
  SourceModel source_model = SourceModel::on_off;
  double arrival_rate = 0.5;
  double service_rate = 1.0;
  double horizon = 1000.0;
  std::uint64_t seed = 1;
  /// Rate resampling period of the piecewise_uniform_rate source.
  double grid_step = 1.0;
  double warmup_fraction = 0.1;
  /// Mean on and off durations of the on_off source (exponential).
  double mean_on = 1.0;
  double mean_off = 1.0;
  /// Number of instants at which the integral representation is re-checked.
  std::size_t residual_samples = 256;

  void validate() const;
};

/// Identifier of the pseudo-random generator behind generate().
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Deterministic in the scenario (seed included).
SignedPath generate(const Scenario& sc);

/// Random pair of cumulatives with independent knots (2 to max_knots each,
/// a fifth of the increments zero) on a random horizon in [1, 10]. Used to
/// fuzz the lemma checks.
SignedPath fuzz_path(std::uint64_t seed, std::size_t max_knots = 200);

struct StationaryReport {
  double time_avg_q = 0.0;
  double palm_avg_q = 0.0;
  /// time_avg_q / ((a/c) * palm_avg_q); 1 by convention when both averages vanish.
  double littles_ratio = 1.0;
  double integral_rep_residual = 0.0;
  double peak_q = 0.0;
  /// Both averages were zero and the ratio was set by convention.
  bool degenerate = false;
  std::string generator{kGeneratorName};
};

/// Reflects the generated path, drops the warmup prefix and reports the
/// time average of Q*, its arrival-weighted average, their Little ratio,
/// and sup |Q* - Theta(Q*)| at sampled instants past warmup.
/// Throws InputError unless a < c.
StationaryReport run_stationary(const Scenario& sc);
StationaryReport run_stationary(const Scenario& sc, const SignedPath& path);

}  // namespace skorokhod
