#pragma once

// Numerical checks of the structural identities of reflection, Theta and Phi
// on a single path. Each check reports the worst deviation it saw.

#include <cstdint>
#include <string>
#include <vector>

#include "skorokhod/measure.hpp"

namespace skorokhod {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Largest violation observed (0 when none); units of the check.
  double worst = 0.0;
  double tolerance = 0.0;
};

struct SuiteOptions {
  /// Identity tolerance is tol_scale * (1 + A(T) + C(T)).
  double tol_scale = 1e-9;
  /// Limit-based checks (Q_inf = Q*, B_inf <= U) use this looser scale.
  double limit_tol_scale = 1e-6;
  std::size_t max_iter = 10000;
  /// Number of random (s, t) probes per pointwise lemma.
  std::size_t probes = 64;
  /// Bridge identity is checked for k = 1..bridge_steps.
  std::size_t bridge_steps = 20;
  std::uint64_t seed = 7;
};

std::vector<CheckResult> run_lemma_suite(const SignedPath& x, const SuiteOptions& opts = {});

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace skorokhod
