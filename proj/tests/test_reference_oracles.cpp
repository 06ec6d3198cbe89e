#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dsa2/errors.hpp"
#include "dsa2/reference_oracles.hpp"
#include "dsa2/vec.hpp"
#include "test_support.hpp"

using namespace dsa2;

TEST_CASE("centralized double averaging matches the hand trajectory") {
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-1.0}, {1.0}));
  LocalObjective f = make_abs_linear_objective({1.0}, setup.norm);
  GammaSchedule sched = GammaSchedule::sqrt_rule(1.0);
  std::vector<double> x0 = {1.0};
  auto xs = centralized_sa2(f, setup, sched, x0, 5);
  REQUIRE(xs.size() == 5);

  const double x2 = -1.0 / (3.0 * std::sqrt(2.0));
  const double x3 = 3.0 * x2 / 4.0;
  const double x4 = (4.0 * x3 + 0.5) / 5.0;
  const double x5 = (5.0 * x4 + 2.0 / std::sqrt(5.0)) / 6.0;
  CHECK(xs[0][0] == doctest::Approx(0.0));
  CHECK(xs[1][0] == doctest::Approx(x2).epsilon(1e-15));
  CHECK(xs[2][0] == doctest::Approx(x3).epsilon(1e-15));
  CHECK(xs[3][0] == doctest::Approx(x4).epsilon(1e-15));
  CHECK(xs[4][0] == doctest::Approx(x5).epsilon(1e-15));

  CHECK_THROWS_AS(centralized_sa2(f, setup, sched, std::vector<double>{2.0}, 5), ConfigError);
  CHECK_THROWS_AS(centralized_sa2(f, setup, sched, x0, 0), ConfigError);
}

TEST_CASE("lattice minimization on boxes") {
  auto f = [](std::span<const double> x) { return std::fabs(x[0] - 0.3); };
  GroundTruth g = brute_force_min(f, FeasibleSet::box({0.0}, {1.0}), 1e-3);
  CHECK(g.f_star <= 1e-6);
  CHECK(std::fabs(g.x_star[0] - 0.3) <= 1e-3);

  auto f2 = [](std::span<const double> x) { return std::fabs(x[0]) + std::fabs(x[1]); };
  GroundTruth g2 = brute_force_min(f2, FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0}), 0.01);
  CHECK(g2.f_star == 0.0);  // the lattice contains the origin exactly
  CHECK(g2.x_star == std::vector<double>{0.0, 0.0});

  // Minimum at a box endpoint, which the lattice includes even when the
  // width is not a multiple of the resolution.
  auto f3 = [](std::span<const double> x) { return -x[0]; };
  GroundTruth g3 = brute_force_min(f3, FeasibleSet::box({0.0}, {0.7005}), 1e-3);
  CHECK(g3.f_star == doctest::Approx(-0.7005));
}

TEST_CASE("lattice minimization on the disc") {
  auto f = [](std::span<const double> x) { return std::fabs(x[0] - 2.0); };
  GroundTruth g = brute_force_min(f, FeasibleSet::l2_ball(1.0, 2), 1e-3);
  CHECK(g.f_star == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.x_star[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lattice minimization guardrails") {
  auto f = [](std::span<const double>) { return 0.0; };
  CHECK_THROWS_AS(brute_force_min(f, FeasibleSet::box({0, 0, 0}, {1, 1, 1}), 0.1), ConfigError);
  CHECK_THROWS_AS(brute_force_min(f, FeasibleSet::box({0.0}, {1.0}), 0.0), ConfigError);
  CHECK_THROWS_AS(brute_force_min(f, FeasibleSet::simplex(2), 0.1), ConfigError);
}

TEST_CASE("coupled ground truth, closed-form cases") {
  std::vector<double> one = {1.0};
  // b = 0: constraint slack at x = 0, lambda* = 0.
  CoupledTruth zero = solve_example_dual_bisection(one, one, 0.0);
  CHECK(zero.lambda_star == doctest::Approx(0.0));
  CHECK(zero.f_star == doctest::Approx(0.0));
  CHECK(zero.x_star[0] == doctest::Approx(0.0));

  // b = log 2: x* = 1 exactly, lambda* = 2 (stationarity of x + lambda log(1+x)).
  CoupledTruth tight = solve_example_dual_bisection(one, one, std::log(2.0));
  CHECK(tight.x_star[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(tight.f_star == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(tight.lambda_star == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(tight.kkt_residual <= 1e-8);

  // Two identical agents, b = log 2: lambda* = sqrt(2), x_i* = sqrt(2) - 1.
  std::vector<double> ones = {1.0, 1.0};
  CoupledTruth pair = solve_example_dual_bisection(ones, ones, std::log(2.0));
  CHECK(pair.lambda_star == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(pair.x_star[0] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
  CHECK(pair.x_star[1] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
  CHECK(pair.f_star == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-9));
  CHECK(pair.kkt_residual <= 1e-8);

  // Infeasible: even x = 1 everywhere cannot reach b.
  CHECK_THROWS_AS(solve_example_dual_bisection(one, one, 1.0), InfeasibleError);
  CHECK_THROWS_AS(solve_example_dual_bisection(std::vector<double>{-1.0}, one, 0.1), ConfigError);
}

TEST_CASE("primal enumeration agrees with bisection") {
  std::vector<double> one = {1.0};
  CoupledTruth a = solve_example_primal_enumeration(one, one, std::log(2.0));
  CHECK(a.f_star == doctest::Approx(1.0).epsilon(1e-8));

  SplitMix64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + rng.next_below(5);
    std::vector<double> c(n), d(n);
    double cap = 0.0;
    for (int i = 0; i < n; ++i) {
      c[i] = rng.uniform(0.1, 1.0);
      d[i] = rng.uniform(0.1, 1.0);
      cap += d[i] * std::log(2.0);
    }
    double b = rng.uniform(0.1, 0.9) * cap;
    CoupledTruth dual = solve_example_dual_bisection(c, d, b);
    CoupledTruth primal = solve_example_primal_enumeration(c, d, b);
    CHECK(dual.kkt_residual <= 1e-8);
    CHECK(std::fabs(dual.f_star - primal.f_star) <= 1e-8);
    CHECK(linf_dist(dual.x_star, primal.x_star) <= 1e-6);
  }
}

TEST_CASE("grid oracle brackets the coupled optimum") {
  std::vector<double> one = {1.0};
  double g1 = coupled_grid_min(one, one, std::log(2.0), 1e-4);
  CHECK(g1 == doctest::Approx(1.0).epsilon(3e-4));

  std::vector<double> ones = {1.0, 1.0};
  double g2 = coupled_grid_min(ones, ones, std::log(2.0), 1e-3);
  CHECK(g2 == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(5e-3));
  // The grid value is feasible, so it can only overshoot the optimum.
  CHECK(g2 >= 2.0 * (std::sqrt(2.0) - 1.0) - 1e-12);

  CHECK_THROWS_AS(coupled_grid_min(one, one, 1.0, 1e-3), InfeasibleError);
  CHECK_THROWS_AS(coupled_grid_min(std::vector<double>{1.0, 1.0, 1.0},
                                   std::vector<double>{1.0, 1.0, 1.0}, 0.1, 1e-3),
                  ConfigError);
}
