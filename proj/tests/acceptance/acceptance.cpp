// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "skorokhod/integral_operator.hpp"
#include "skorokhod/oracle.hpp"
#include "skorokhod/reflection.hpp"
#include "skorokhod/regulating.hpp"
#include "skorokhod/simulate.hpp"
#include "skorokhod/verify.hpp"

using namespace skorokhod;

namespace {

constexpr std::size_t kPaths = 1000;      // reflection and pointwise lemmas
constexpr std::size_t kIterPaths = 100;   // criteria that run the iterations to their limit
constexpr std::size_t kMaxKnots = 200;
constexpr std::uint64_t kSeedBase = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double sup_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<SignedPath> make_paths(std::size_t n) {
  std::vector<SignedPath> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fuzz_path(kSeedBase + i, kMaxKnots));
  return out;
}

void criterion_1(const std::vector<SignedPath>& paths) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t bad = 0;
  for (const SignedPath& x : paths) {
    const ReflectionResult r = reflect(x);
    const auto g = oracle::DenseGrid::over(x, x.horizon());  // the knots
    const std::vector<double> q = oracle::brute_reflect(x, g);
    bool ok = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double rel = std::abs(r.qstar_at(g.points()[i]) - q[i]) / (1.0 + std::abs(q[i]));
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-12;
    }
    if (!ok) ++bad;
  }
  const double secs = seconds_since(t0);
  report(1, bad == 0 && secs < 10.0,
         fmt("reflect = brute force at every knot on %g paths, worst rel %.3g (tol 1e-12), %.2f s (target < 10 s)",
             static_cast<double>(paths.size()), worst, secs));
}

void criterion_2(const std::vector<SignedPath>& paths) {
  double worst = 0.0;
  std::size_t bad = 0;
  for (const SignedPath& x : paths) {
    const ReflectionResult r = reflect(x);
    const SampledPath sp = SampledPath::build(x, r.grid);
    const double res = sup_diff(r.qstar, apply_theta(r.qstar, sp));
    const double scale = 1.0 + x.arrivals().total();
    worst = std::max(worst, res / scale);
    if (res > 1e-9 * scale) ++bad;
  }
  report(2, bad == 0,
         fmt("sup |Q* - Theta(Q*)| / (1 + A(T)) = %.3g (tol 1e-9) on %g paths, %g violations", worst,
             static_cast<double>(paths.size()), static_cast<double>(bad)));
}

struct IterRun {
  IterationTrace q;
  IterationTrace b;
  ReflectionResult r;
};

IterRun run_iterations(const SignedPath& x) {
  ReflectionResult r = reflect(x);
  const double tol = default_theta_tolerance(x);
  IterationTrace q = iterate_theta(x, r.grid, tol, 10000);
  IterationTrace b = iterate_phi(x, r.grid, tol, 10000);
  return {std::move(q), std::move(b), std::move(r)};
}

void criterion_3(const std::vector<SignedPath>& paths, const std::vector<IterRun>& runs) {
  double worst = 0.0;
  std::size_t far = 0, unconverged = 0, increases = 0;
  std::size_t max_iter_seen = 0;
  for (std::size_t p = 0; p < runs.size(); ++p) {
    const SignedPath& x = paths[p];
    const IterRun& run = runs[p];
    const double scale = 1.0 + x.arrivals().total();
    const double err = sup_diff(run.q.limit(), run.r.qstar) / scale;
    worst = std::max(worst, err);
    if (err > 1e-6) ++far;
    if (!run.q.converged) ++unconverged;
    max_iter_seen = std::max(max_iter_seen, run.q.iterations());
    for (std::size_t k = 1; k < run.q.iterations(); ++k) {
      for (std::size_t i = 0; i < run.q.grid.size(); ++i) {
        if (run.q.iterates[k][i] > run.q.iterates[k - 1][i]) ++increases;
      }
    }
  }
  report(3, far == 0 && unconverged == 0 && increases == 0,
         fmt("sup |Q_inf - Q*| / (1 + A(T)) = %.3g (tol 1e-6); %g of the paths above tol, %g unconverged, "
             "most iterations %g",
             worst, static_cast<double>(far), static_cast<double>(unconverged), static_cast<double>(max_iter_seen)) +
             fmt("; %g pointwise increases in the traces of %g paths", static_cast<double>(increases),
                 static_cast<double>(runs.size())));
}

void criterion_4(const std::vector<SignedPath>& paths) {
  double worst = 0.0;
  std::size_t bad = 0;
  const double exact = std::numeric_limits<double>::denorm_min();
  for (const SignedPath& x : paths) {
    const Grid grid = reflect(x).grid;
    const SampledPath sp = SampledPath::build(x, grid);
    const IterationTrace q = iterate_theta(x, grid, exact, 20);
    const IterationTrace b = iterate_phi(x, grid, exact, 20);
    const double scale = 1.0 + x.arrivals().total() + x.services().total();
    for (std::size_t k = 1; k <= 20; ++k) {
      const auto qk = q.iterate(k), bk = b.iterate(k);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double res = std::abs(qk[i] + sp.services[i] - sp.arrivals[i] - bk[i]) / scale;
        worst = std::max(worst, res);
        if (res > 1e-9) ++bad;
      }
    }
  }
  report(4, bad == 0,
         fmt("bridge Q_k + C = A + B_k for k <= 20 on %g paths, worst residual / (1 + A(T) + C(T)) = %.3g (tol 1e-9)",
             static_cast<double>(paths.size()), worst));
}

void criterion_5() {
  const SignedPath x(Cumulative::linear(2.0, 5.0), Cumulative::linear(1.0, 5.0));
  const Grid grid = Grid::uniform(5.0, 10);
  const double exact = std::numeric_limits<double>::denorm_min();
  const IterationTrace q = iterate_theta(x, grid, exact, 12);
  const IterationTrace b = iterate_phi(x, grid, exact, 12);
  double worst = 0.0;
  bool complete = q.iterations() == 12 && b.iterations() == 12;
  for (std::size_t k = 1; k <= 12 && complete; ++k) {
    const double beta = 1.0 / (std::ldexp(1.0, static_cast<int>(k)) - 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      worst = std::max(worst, std::abs(q.iterate(k)[i] - t * (1.0 + beta)));
      worst = std::max(worst, std::abs(b.iterate(k)[i] - t * beta));
    }
  }
  report(5, complete && worst <= 1e-10,
         fmt("A = 2t, C = t on [0, 5]: Q_k = t(1 + 1/(2^k - 1)), B_k = t/(2^k - 1) for k <= 12, worst error %.3g "
             "(tol 1e-10)",
             worst));
}

void criterion_6(const std::vector<SignedPath>& paths, const std::vector<IterRun>& runs) {
  double phi_up = 0.0, hit = 0.0, modulus = 0.0, fixed = 0.0, above_u = 0.0, u_res = 0.0;
  std::size_t unconverged = 0;
  for (std::size_t p = 0; p < runs.size(); ++p) {
    const SignedPath& x = paths[p];
    const IterRun& run = runs[p];
    const Grid& grid = run.r.grid;
    const SampledPath sp = SampledPath::build(x, grid);
    // the lemmas on the first iterates, B_1 = C onwards
    std::vector<double> b(sp.services);
    for (int k = 0; k < 5; ++k) {
      std::vector<double> sig;
      const std::vector<double> next = apply_phi(b, sp, &sig);
      const PiecewiseLinear bc(grid, b);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        phi_up = std::max(phi_up, next[i] - b[i]);
        hit = std::max(hit, std::abs(x.arrivals().eval(sig[i]) + bc(sig[i]) - sp.services[i]));
        if (i > 0) {
          const double rise = next[i] - next[i - 1];
          const double dc = sp.services[i] - sp.services[i - 1];
          modulus = std::max({modulus, -rise, rise - dc});
        }
      }
      b = next;
    }
    const auto lim = run.b.limit();
    if (!run.b.converged) ++unconverged;
    fixed = std::max(fixed, sup_diff(apply_phi(lim, sp), lim));
    const RegulatingFunction u = u_from(x);
    const std::vector<double> us = u.curve().sample(grid.points());
    for (std::size_t i = 0; i < grid.size(); ++i) above_u = std::max(above_u, lim[i] - us[i]);
    u_res = std::max(u_res, sup_diff(apply_phi(us, sp), us));
  }
  const bool ok = phi_up <= 0.0 && hit <= 1e-9 && modulus <= 1e-12 && fixed <= 1e-6 && above_u <= 1e-6 &&
                  u_res <= 1e-9 && unconverged == 0;
  report(6, ok,
         fmt("on %g paths: max Phi(B) - B = %.3g (exact 0), hitting residual %.3g (1e-9), modulus slack %.3g (1e-12)",
             static_cast<double>(runs.size()), phi_up, hit, modulus) +
             fmt(", B_inf fixed-point residual %.3g (1e-6), max B_inf - U %.3g (1e-6), U - Phi(U) %.3g (1e-9)", fixed,
                 above_u, u_res) +
             fmt(", %g unconverged", static_cast<double>(unconverged)));
}

void criterion_7(const std::vector<SignedPath>& paths) {
  std::mt19937_64 rng(77);
  std::size_t probes = 0, bad = 0;
  for (const SignedPath& x : paths) {
    const ReflectionResult r = reflect(x);
    const double tol = x.tolerance();
    std::uniform_real_distribution<double> when(0.0, x.horizon());
    auto check = [&](double s, double s2, double t) {
      ++probes;
      const bool ok = check_indicator_monotone(x, r, s, s2, t, tol) && check_semigroup(x, r, s, t, tol) &&
                      check_additive_continuation(x, r, s, t, tol) && check_sigma_bracket(x, r, s, t, tol);
      if (!ok) ++bad;
    };
    for (int rep = 0; rep < 32; ++rep) {
      double v[3] = {when(rng), when(rng), when(rng)};
      std::sort(v, v + 3);
      check(v[0], v[1], v[2]);
    }
    // grid points, where the content empties or the slopes change
    for (std::size_t i = 0; i + 1 < r.grid.size(); i += std::max<std::size_t>(1, r.grid.size() / 8)) {
      check(r.grid[i], r.grid[i + 1], r.grid.horizon());
      check(r.grid[i], r.grid[i], r.grid[i + 1]);
    }
  }
  report(7, bad == 0,
         fmt("indicator monotonicity, semigroup, additive continuation and sigma* bracket at %g (s, t) probes on %g "
             "paths, %g violations",
             static_cast<double>(probes), static_cast<double>(paths.size()), static_cast<double>(bad)));
}

void criterion_8() {
  const auto t0 = Clock::now();
  auto seed_average = [](double mean_on, double mean_off, bool& all_degenerate, double& lo, double& hi) {
    double sum = 0.0;
    all_degenerate = true;
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Scenario sc;
      sc.source_model = SourceModel::on_off;
      sc.arrival_rate = 0.5;
      sc.service_rate = 1.0;
      sc.horizon = 1e5;
      sc.warmup_fraction = 0.1;
      sc.mean_on = mean_on;
      sc.mean_off = mean_off;
      sc.seed = seed;
      const StationaryReport rep = run_stationary(sc);
      sum += rep.littles_ratio;
      lo = std::min(lo, rep.littles_ratio);
      hi = std::max(hi, rep.littles_ratio);
      all_degenerate = all_degenerate && rep.degenerate;
    }
    return sum / 10.0;
  };
  bool deg_default = false, deg_loaded = false;
  double lo1, hi1, lo2, hi2;
  const double r_default = seed_average(1.0, 1.0, deg_default, lo1, hi1);
  const double r_loaded = seed_average(1.0, 3.0, deg_loaded, lo2, hi2);
  const double secs = seconds_since(t0);
  const bool ok = r_default >= 0.95 && r_default <= 1.05 && r_loaded >= 0.95 && r_loaded <= 1.05 && !deg_loaded &&
                  secs < 60.0;
  std::string what =
      fmt("on_off a = 0.5, c = 1, T = 1e5, warmup 10%%, 10 seeds: mean Little ratio %.4f with on/off means 1/3 "
          "(seeds %.4f..%.4f), %.4f with means 1/1",
          r_loaded, lo2, hi2, r_default);
  if (deg_default) what += " (peak rate equals c there, content stays 0, ratio 1 by convention)";
  what += fmt("; %.1f s (target < 60 s)", secs);
  report(8, ok, what);
}

void criterion_9(const std::vector<SignedPath>& paths) {
  double worst = 0.0;
  for (const SignedPath& p : paths) {
    // strictly increasing service: add a unit-rate term to the random one
    std::vector<double> knots(p.services().knots().begin(), p.services().knots().end());
    std::vector<double> values(p.services().values().begin(), p.services().values().end());
    for (std::size_t i = 0; i < knots.size(); ++i) values[i] += knots[i];
    const SignedPath x(p.arrivals(), Cumulative::from_breakpoints(std::move(knots), std::move(values)));
    const SampledPath sp = SampledPath::build(x, x.grid().oversampled(2));
    const std::vector<double> zero(sp.size(), 0.0);
    for (double v : apply_theta(zero, sp)) worst = std::max(worst, std::abs(v));
  }
  SuiteOptions opts;
  opts.max_iter = 50;
  bool listed = false;
  for (const CheckResult& c : run_lemma_suite(paths.front(), opts)) {
    if (c.name.find("non-maximal fixed point") != std::string::npos && c.passed && c.worst == 0.0) listed = true;
  }
  report(9, worst == 0.0 && listed,
         fmt("Theta(0) = 0 with strictly increasing C on %g paths, largest value %.3g (must be 0)",
             static_cast<double>(paths.size()), worst) +
             (listed ? "; the verify report lists and passes it" : "; missing from the verify report"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<SignedPath> paths = make_paths(kPaths);
  const std::vector<SignedPath> iter_paths(paths.begin(), paths.begin() + kIterPaths);

  criterion_1(paths);
  criterion_2(paths);
  std::vector<IterRun> runs;
  runs.reserve(iter_paths.size());
  for (const SignedPath& x : iter_paths) runs.push_back(run_iterations(x));
  criterion_3(iter_paths, runs);
  criterion_4(iter_paths);
  criterion_5();
  criterion_6(iter_paths, runs);
  criterion_7(paths);
  criterion_8();
  criterion_9(paths);

  std::printf("%d of 9 criteria failed (%.1f s)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
