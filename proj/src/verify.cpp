#include "skorokhod/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "skorokhod/integral_operator.hpp"
#include "skorokhod/reflection.hpp"
#include "skorokhod/regulating.hpp"

namespace skorokhod {

namespace {

class Recorder {
 public:
  void add(std::string name, double worst, double tol, bool extra_ok = true) {
    out_.push_back({std::move(name), extra_ok && worst <= tol, worst, tol});
  }
  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::vector<CheckResult> out_;
};

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

}  // namespace

std::vector<CheckResult> run_lemma_suite(const SignedPath& x, const SuiteOptions& opts) {
  Recorder rec;
  const double tol = x.tolerance(opts.tol_scale);
  const double a_total = x.arrivals().total();
  const double limit_tol = opts.limit_tol_scale * (1.0 + a_total);
  const double horizon = x.horizon();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const ReflectionResult r = reflect(x);
  const Grid& grid = r.grid;
  const SampledPath sp = SampledPath::build(x, grid);
  const std::size_t n = grid.size();

  // Reflection problem: Q* = X + Y >= 0, Y nondecreasing from 0.
  {
    double worst = std::abs(r.qstar[0]) + std::abs(r.regulator[0]);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = sp.arrivals[i] - sp.services[i];
      worst = std::max({worst, std::abs(r.qstar[i] - xi - r.regulator[i]), positive_part(-r.qstar[i])});
      if (i > 0) worst = std::max(worst, positive_part(r.regulator[i - 1] - r.regulator[i]));
    }
    rec.add("reflection: Q* = X + Y >= 0, Y nondecreasing, Q*(0) = Y(0) = 0", worst, tol);
  }
  {
    const double q_max = *std::max_element(r.qstar.begin(), r.qstar.end());
    const double y_mass = r.regulator.back();
    rec.add("complementarity: integral of Q* dY = 0", std::abs(check_complementarity(r)),
            opts.tol_scale * y_mass * q_max);
  }

  // Pointwise lemmas at random probes plus grid points.
  auto probe_time = [&](double hi) { return hi * unit(rng); };
  {
    std::size_t failures = 0, semigroup_fail = 0, continuation_fail = 0, bracket_fail = 0;
    double hit_worst = 0.0;
    for (std::size_t p = 0; p < opts.probes; ++p) {
      const double t = p % 4 == 0 ? grid[(p / 4) % n] : probe_time(horizon);
      double s = probe_time(t), s2 = probe_time(t);
      if (s > s2) std::swap(s, s2);
      if (!check_indicator_monotone(x, r, s, s2, t, tol)) ++failures;
      if (!check_semigroup(x, r, s, t, tol)) ++semigroup_fail;
      if (!check_additive_continuation(x, r, s, t, tol)) ++continuation_fail;
      const double sigma = sigma_star(r, x, t);
      hit_worst = std::max(hit_worst, std::abs(r.qstar_at(sigma) - x.services().increment(sigma, t)));
      // Probe strictly inside [0, sigma] and (sigma, t].
      if (sigma > 0.0 && !check_sigma_bracket(x, r, sigma * unit(rng), t, tol)) ++bracket_fail;
      if (sigma < t && !check_sigma_bracket(x, r, sigma + (t - sigma) * (0.5 + 0.5 * unit(rng)), t, tol)) {
        ++bracket_fail;
      }
    }
    rec.add("indicator monotonicity: Q*(s) > C(s,t] persists for later s", static_cast<double>(failures), 0.0);
    rec.add("semigroup identity for Q*", static_cast<double>(semigroup_fail), 0.0);
    rec.add("additive continuation: Q*(s) >= C(s,t] => Q*(t) = Q*(s) + X(s,t]",
            static_cast<double>(continuation_fail), 0.0);
    rec.add("last-emptiness time: Q*(sigma*(t)) = C(sigma*(t), t]", hit_worst, tol);
    rec.add("last-emptiness bracket around sigma*(t)", static_cast<double>(bracket_fail), 0.0);
  }

  // Theta.
  const PiecewiseLinear qstar = r.content();
  rec.add("integral representation: Q* = Theta(Q*)", check_fixed_point(qstar, x), tol);
  {
    const PiecewiseLinear zero = PiecewiseLinear::constant(0.0, horizon);
    const double residual = check_fixed_point(zero, x);
    rec.add("non-maximal fixed point: Theta(0) = 0", residual, 0.0);
    std::vector<double> shifted(r.qstar);
    std::vector<double> damped(r.qstar);
    const double lambda = unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
      shifted[i] += 1.0 + unit(rng);
      damped[i] *= lambda;
    }
    const PiecewiseLinear up(grid, shifted), down(grid, damped);
    const bool ok = check_theta_monotone(zero, qstar, x) && check_theta_monotone(down, qstar, x) &&
                    check_theta_monotone(qstar, up, x) && check_theta_monotone(qstar, unbounded_workload(horizon), x);
    rec.add("Theta is increasing", ok ? 0.0 : 1.0, 0.0);
  }

  const IterationTrace qt = iterate_theta(x, grid, default_theta_tolerance(x), opts.max_iter);
  {
    double rise = 0.0, below_qstar = 0.0;
    for (std::size_t k = 0; k < qt.iterations(); ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (k > 0) rise = std::max(rise, qt.iterates[k][i] - qt.iterates[k - 1][i]);
        below_qstar = std::max(below_qstar, r.qstar[i] - qt.iterates[k][i]);
      }
    }
    rec.add("Theta iterates are nonincreasing (exact)", rise, 0.0);
    rec.add("Q* <= Q_k for every k", below_qstar, tol);
    const auto limit = qt.limit();
    const std::vector<double> image = apply_theta(limit, sp);
    double super = 0.0, dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      super = std::max(super, image[i] - limit[i]);
      dist = std::max(dist, std::abs(limit[i] - r.qstar[i]));
    }
    rec.add("Theta(Q_inf) <= Q_inf", super, tol);
    rec.add("maximal solution: Q_inf = Q*", dist, limit_tol, qt.converged);
  }

  // Phi.
  const IterationTrace bt = iterate_phi(x, grid, default_theta_tolerance(x), opts.max_iter);
  const RegulatingFunction u = u_from(x);
  const std::vector<double> us = u.curve().sample(grid.points());
  {
    double shrink = 0.0, hit = 0.0, modulus = 0.0, regulating = 0.0;
    const std::size_t checked = std::min<std::size_t>(bt.iterations(), 8);
    std::vector<std::span<const double>> candidates;
    for (std::size_t k = 0; k < checked; ++k) candidates.push_back(bt.iterates[k]);
    candidates.push_back(bt.limit());
    candidates.push_back(us);
    for (const auto b : candidates) {
      std::vector<double> sigma;
      const std::vector<double> img = apply_phi(b, sp, &sigma);
      for (std::size_t i = 0; i < n; ++i) {
        shrink = std::max(shrink, img[i] - b[i]);
        regulating = std::max(regulating, positive_part(-(sp.arrivals[i] + img[i] - sp.services[i])));
        if (sigma[i] < grid[i]) {
          const double a_at = interpolate_at(grid.points(), sp.arrivals, sigma[i]);
          const double b_at = interpolate_at(grid.points(), b, sigma[i]);
          hit = std::max(hit, std::abs(a_at + b_at - sp.services[i]));
        }
        if (i > 0) {
          const double rise = img[i] - img[i - 1];
          modulus = std::max({modulus, positive_part(-rise), rise - (sp.services[i] - sp.services[i - 1])});
        }
      }
    }
    rec.add("Phi(B) <= B (exact)", shrink, 0.0);
    rec.add("Phi(B) is regulating", regulating, tol);
    rec.add("hitting identity: A(sigma_B) + B(sigma_B) = C", hit, tol);
    rec.add("modulus: 0 <= Phi(B)(t') - Phi(B)(t) <= C(t') - C(t)", modulus, 1e-12 * (1.0 + x.services().total()));
  }
  {
    double rise = 0.0, sigma_drop = 0.0;
    std::vector<double> prev_sigma;
    const std::size_t checked = std::min<std::size_t>(bt.iterations(), 20);
    for (std::size_t k = 0; k < bt.iterations(); ++k) {
      if (k > 0) {
        for (std::size_t i = 0; i < n; ++i) rise = std::max(rise, bt.iterates[k][i] - bt.iterates[k - 1][i]);
      }
      if (k < checked) {
        std::vector<double> sigma;
        apply_phi(bt.iterates[k], sp, &sigma);
        if (!prev_sigma.empty()) {
          for (std::size_t i = 0; i < n; ++i) sigma_drop = std::max(sigma_drop, prev_sigma[i] - sigma[i]);
        }
        prev_sigma = std::move(sigma);
      }
    }
    rec.add("Phi iterates are nonincreasing (exact)", rise, 0.0);
    rec.add("sigma_{B_k} <= sigma_{B_{k+1}}", sigma_drop, tol);
  }
  {
    const auto limit = bt.limit();
    const std::vector<double> img = apply_phi(limit, sp);
    double residual = 0.0, above_u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(img[i] - limit[i]));
      above_u = std::max(above_u, limit[i] - us[i]);
    }
    const bool regulating = is_regulating(PiecewiseLinear(grid, std::vector<double>(limit.begin(), limit.end())), x, tol);
    rec.add("B_inf is a regulating fixed point of Phi", residual, limit_tol, regulating && bt.converged);
    rec.add("fixed points of Phi are dominated by U: B_inf <= U", above_u, limit_tol);

    const std::vector<double> u_img = apply_phi(us, sp);
    double u_residual = 0.0, u_identity = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      u_residual = std::max(u_residual, std::abs(u_img[i] - us[i]));
      u_identity = std::max(u_identity, std::abs(us[i] - (r.qstar[i] - (sp.arrivals[i] - sp.services[i]))));
    }
    rec.add("U = Q* - X is a regulating fixed point of Phi", std::max(u_residual, u_identity), tol,
            is_regulating(u.curve(), x, tol));
  }
  {
    const double exact = std::numeric_limits<double>::denorm_min();
    const IterationTrace qk = iterate_theta(x, grid, exact, opts.bridge_steps);
    const IterationTrace bk = iterate_phi(x, grid, exact, opts.bridge_steps);
    double worst = 0.0;
    for (std::size_t k = 1; k <= opts.bridge_steps; ++k) {
      const auto q = qk.iterate(k);
      const auto b = bk.iterate(k);
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(q[i] + sp.services[i] - sp.arrivals[i] - b[i]));
      }
    }
    rec.add("bridge identity: Q_k + C = A + B_k", worst, tol);
    double limits = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      limits = std::max(limits, std::abs(qt.limit()[i] + sp.services[i] - sp.arrivals[i] - bt.limit()[i]));
    }
    rec.add("limits: Q_inf + C = A + B_inf", limits, limit_tol);
  }
  return rec.take();
}

}  // namespace skorokhod
