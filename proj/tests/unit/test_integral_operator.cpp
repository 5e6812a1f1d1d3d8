#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "skorokhod/integral_operator.hpp"
#include "skorokhod/oracle.hpp"
#include "skorokhod/reflection.hpp"
#include "skorokhod/simulate.hpp"
#include "test_paths.hpp"

using namespace skorokhod;
using testing_support::cum;
using testing_support::linear_path;

TEST_CASE("Theta of the unbounded workload is A") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SignedPath x = fuzz_path(seed, 30);
    const Grid g = x.grid();
    const std::vector<double> q1 = theta(unbounded_workload(x.horizon()), x, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(q1[i] == doctest::Approx(x.arrivals().eval(g[i])).epsilon(1e-13));
    }
  }
}

TEST_CASE("Theta of the zero function vanishes for any service") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SignedPath x = fuzz_path(seed, 30);
    for (double v : theta(PiecewiseLinear::constant(0.0, x.horizon()), x, x.grid())) CHECK(v == 0.0);
  }
}

TEST_CASE("Theta(2s) = 4t/3 for A = 2t, C = t, and the Riemann oracle converges to it") {
  const SignedPath x = linear_path(2.0, 1.0, 1.0);
  const PiecewiseLinear q({0, 1}, {0, 2});
  CHECK(theta(q, x, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(theta(q, x, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  double prev = 1.0;
  for (double step : {1e-2, 1e-3, 1e-4}) {
    const double err = std::abs(oracle::brute_theta(q, x, oracle::DenseGrid::over(x, step), 1.0) - 4.0 / 3.0);
    CHECK(err <= 2.0 * step);
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("Theta agrees with the Riemann oracle on random paths and functions") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const SignedPath x = fuzz_path(seed, 15);
    const ReflectionResult r = reflect(x);
    // a perturbed content, so the indicator switches at generic places
    std::vector<double> vals(r.qstar);
    std::uniform_real_distribution<double> d(0.0, 0.5);
    for (double& v : vals) v += d(rng);
    const PiecewiseLinear q(r.grid, vals);
    const double t = x.horizon() * 0.77;
    const double exact = theta(q, x, t);
    const double coarse = std::abs(oracle::brute_theta(q, x, oracle::DenseGrid::over(x, 1e-2), t) - exact);
    const double fine = std::abs(oracle::brute_theta(q, x, oracle::DenseGrid::over(x, 1e-3), t) - exact);
    // first order in the step, scaled by the arrival rate
    CHECK(fine <= 1e-3 * 50.0 * (1.0 + x.arrivals().max_slope()));
    CHECK(fine <= coarse + 1e-12);
  }
}

TEST_CASE("iteration closed form for A = 2t, C = t") {
  const SignedPath x = linear_path(2.0, 1.0, 1.0);
  const IterationTrace tr = iterate_theta(x, Grid({0.0, 0.5, 1.0}), 1e-300, 12);
  REQUIRE(tr.iterations() == 12);
  // beta_k = 1/(2^k - 1) solves beta_{k+1} = beta_k / (2 + beta_k), beta_1 = 1
  double beta = 1.0;
  for (std::size_t k = 1; k <= 12; ++k) {
    CHECK(beta == doctest::Approx(1.0 / (std::ldexp(1.0, static_cast<int>(k)) - 1.0)));
    const auto q = tr.iterate(k);
    CHECK(std::abs(q[2] - (1.0 + beta)) <= 1e-10);
    CHECK(std::abs(q[1] - 0.5 * (1.0 + beta)) <= 1e-10);
    beta = beta / (2.0 + beta);
  }
}

TEST_CASE("critical path A = C = t converges like t/k") {
  // beta_{k+1} = beta_k / (1 + beta_k), beta_1 = 1, so beta_k = 1/k
  const SignedPath x = linear_path(1.0, 1.0, 1.0);
  const IterationTrace tr = iterate_theta(x, 1e-300, 50);
  for (std::size_t k = 1; k <= 50; ++k) CHECK(std::abs(tr.iterate(k).back() - 1.0 / k) <= 1e-13);
  CHECK_FALSE(tr.converged);
}

TEST_CASE("zero arrivals converge immediately to zero") {
  const SignedPath x(Cumulative::zero(2.0), Cumulative::linear(1.0, 2.0));
  const IterationTrace tr = iterate_theta(x, default_theta_tolerance(x));
  CHECK(tr.converged);
  CHECK(tr.iterations() <= 2);
  for (const auto& it : tr.iterates)
    for (double v : it) CHECK(v == 0.0);
}

TEST_CASE("iterates decrease exactly and stay above Q*") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const SignedPath x = fuzz_path(seed, 30);
    const ReflectionResult r = reflect(x);
    const IterationTrace tr = iterate_theta(x, r.grid, default_theta_tolerance(x), 400);
    for (std::size_t k = 1; k < tr.iterations(); ++k) {
      for (std::size_t i = 0; i < r.grid.size(); ++i) {
        CHECK(tr.iterates[k][i] <= tr.iterates[k - 1][i]);
        CHECK(tr.iterates[k][i] >= r.qstar[i] - x.tolerance());
      }
    }
    for (double g : tr.gaps) CHECK(g >= 0.0);
    CHECK(tr.gaps.size() + 1 == tr.iterations());
  }
}

TEST_CASE("Theta is increasing on random ordered pairs") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const SignedPath x = fuzz_path(seed, 20);
    const Grid g = x.grid();
    std::vector<double> lo(g.size()), hi(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      lo[i] = d(rng);
      hi[i] = lo[i] + (i % 3 == 0 ? 0.0 : d(rng));
    }
    CHECK(check_theta_monotone(PiecewiseLinear(g, lo), PiecewiseLinear(g, hi), x));
    CHECK(check_theta_monotone(PiecewiseLinear(g, lo), PiecewiseLinear(g, lo), x));
  }
  const SignedPath x = linear_path(2.0, 1.0, 1.0);
  CHECK(check_theta_monotone(PiecewiseLinear::constant(0.0, 1.0), PiecewiseLinear({0, 1}, {0, 2}), x));
  CHECK_THROWS_AS(check_theta_monotone(PiecewiseLinear({0, 1}, {0, 2}), PiecewiseLinear::constant(0.0, 1.0), x),
                  InputError);
}

TEST_CASE("fixed point residuals") {
  const SignedPath x = linear_path(2.0, 1.0, 1.0);
  CHECK(check_fixed_point(PiecewiseLinear({0, 1}, {0, 1}), x) <= 1e-15);
  CHECK(check_fixed_point(PiecewiseLinear::constant(0.0, 1.0), x) == 0.0);
  CHECK(check_fixed_point(PiecewiseLinear({0, 1}, {1, 2}), x) > 0.5);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const SignedPath y = fuzz_path(seed, 60);
    const ReflectionResult r = reflect(y);
    CHECK(check_fixed_point(r.content(), y) <= 1e-9 * (1.0 + y.arrivals().total()));
  }
}

TEST_CASE("gap ratios are reported, not assumed") {
  const IterationTrace tr = iterate_theta(linear_path(2.0, 1.0, 1.0), 1e-9, 100);
  const auto ratios = tr.gap_ratios();
  REQUIRE(ratios.size() + 1 == tr.gaps.size());
  CHECK(ratios.back() == doctest::Approx(0.5).epsilon(1e-3));
}
