#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dsa2/errors.hpp"
#include "dsa2/metrics_bounds.hpp"
#include "test_support.hpp"

using namespace dsa2;

TEST_CASE("objective error bound") {
  BoundParams p{1.0, 1.0, 1, 0.0, 1.0};
  // ((6 + 13)/1 + 1) / 1 = 20 at t = 0.
  CHECK(objective_error_bound(0, p) == doctest::Approx(20.0));
  // 1/sqrt(t+1) decay, exactly.
  CHECK(objective_error_bound(3, p) == doctest::Approx(10.0));
  CHECK(objective_error_bound(99, p) == doctest::Approx(2.0));

  BoundParams q{2.0, 0.25, 4, 0.5, 0.5};
  double expected = ((6.0 * 4.0 * 2.0 / 0.5 + 13.0 * 4.0) / 0.5 + 0.5 * 0.25) / std::sqrt(2.0);
  CHECK(objective_error_bound(1, q) == doctest::Approx(expected).epsilon(1e-14));

  CHECK_THROWS_AS(objective_error_bound(-1, p), ConfigError);
  CHECK_THROWS_AS(objective_error_bound(0, BoundParams{1.0, 1.0, 1, 1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(objective_error_bound(0, BoundParams{1.0, 1.0, 1, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(objective_error_bound(0, BoundParams{1.0, 1.0, 0, 0.0, 1.0}), ConfigError);
}

TEST_CASE("tracking disagreement bound") {
  CHECK(disagreement_bound(BoundParams{1.0, 0.0, 1, 0.0, 1.0}) == doctest::Approx(3.0));
  CHECK(disagreement_bound(BoundParams{2.0, 0.0, 4, 0.5, 1.0}) ==
        doctest::Approx(2.0 * 2.0 / 0.5 + 4.0));
  CHECK_THROWS_AS(disagreement_bound(BoundParams{1.0, 0.0, 1, 1.0, 1.0}), ConfigError);
}

TEST_CASE("dual bound family at unit parameters") {
  // n = 1, sigma2 = 0, gamma = 1, D = 1, ||lam*|| = 1, C = 1, t = 0:
  //   dual error: 2*1*(3*1 + 6.5)*1 + 1/2            = 19.5
  //   penalty:    4*1*(1 + 2.5)*1 + 2*1*1            = 16
  //   primal hi:  2*1*(1 + 2.5)*1                    = 7
  //   primal lo:  -1 * sqrt(16)                      = -4
  DualBoundParams p{1, 0.0, 1.0, 1.0, 1.0, 1.0};
  DualBounds b = dual_bounds(0, p);
  CHECK(b.dual_error == doctest::Approx(19.5));
  CHECK(b.penalty == doctest::Approx(16.0));
  CHECK(b.primal_hi == doctest::Approx(7.0));
  CHECK(b.primal_lo == doctest::Approx(-4.0));

  // Decay rates: dual_error and primal_hi go as 1/sqrt(t+1); the penalty
  // mixes 1/(t+1) and 1/sqrt(t+1) terms.
  DualBounds b3 = dual_bounds(3, p);
  CHECK(b3.dual_error == doctest::Approx(19.5 / 2.0));
  CHECK(b3.primal_hi == doctest::Approx(3.5));
  CHECK(b3.penalty == doctest::Approx(14.0 / 4.0 + 2.0 / 2.0));
  CHECK(b3.primal_lo == doctest::Approx(-std::sqrt(14.0 / 4.0 + 1.0)));

  CHECK_THROWS_AS(dual_bounds(-1, p), ConfigError);
  CHECK_THROWS_AS(dual_bounds(0, DualBoundParams{1, 1.0, 1.0, 1.0, 1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(dual_bounds(0, DualBoundParams{1, 0.0, 0.0, 1.0, 1.0, 1.0}), ConfigError);
}

TEST_CASE("published penalty-bound constants") {
  // n = 50, sigma2 = 0.9788, gamma = 0.2, D = 0.3025, C = 27.2067 give the
  // penalty bound K1/(t+1) + K2/sqrt(t+1) with K1 = 2.0340e4 and
  // K2 = 10.8827 to four significant figures.
  DualBoundParams p{50, 0.9788, 0.2, 0.3025, 0.0, 27.2067};
  double p0 = dual_bounds(0, p).penalty;   // K1 + K2
  double p3 = dual_bounds(3, p).penalty;   // K1/4 + K2/2
  double k1 = 2.0 * p0 - 4.0 * p3;
  double k2 = p0 - k1;
  CHECK(std::fabs(k1 - 2.0340e4) / 2.0340e4 <= 5e-4);
  CHECK(std::fabs(k2 - 10.8827) / 10.8827 <= 5e-4);
}

TEST_CASE("primal metrics from a handcrafted trace") {
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-2.0}, {2.0}));
  std::vector<LocalObjective> fs = {make_abs_linear_objective({1.0}, setup.norm),
                                    make_abs_linear_objective({2.0}, setup.norm)};
  PrimalTrace tr;
  tr.n = 2;
  tr.m = 1;
  tr.t = {1};
  Mat x(2, 1);
  x.at(0, 0) = 1.0;
  x.at(1, 0) = -0.5;
  tr.x = {x};
  tr.x_hat = {x};
  Mat z(2, 1);
  z.at(0, 0) = 0.25;
  z.at(1, 0) = -1.0;
  tr.z = {z};
  tr.gsum = {{0.5}};

  GroundTruth truth;
  truth.f_star = 0.0;
  PrimalMetrics m = measure_metrics(tr, fs, setup.norm, &truth);
  // Global objective (|x| + |2x|)/2 = 1.5 |x|.
  CHECK(m.objective[0][0] == doctest::Approx(1.5));
  CHECK(m.objective[0][1] == doctest::Approx(0.75));
  CHECK(m.obj_err[0][1] == doctest::Approx(0.75));
  CHECK(m.diameter[0] == doctest::Approx(1.5));
  CHECK(m.track_dev[0][0] == doctest::Approx(0.25));
  CHECK(m.track_dev[0][1] == doctest::Approx(1.5));

  PrimalMetrics nm = measure_metrics(tr, fs, setup.norm, nullptr);
  CHECK(std::isnan(nm.obj_err[0][0]));
}

TEST_CASE("dual metrics match direct evaluation") {
  std::vector<CoupledAgentSpec> agents = {make_log_utility_agent(1.0, 1.0, 0.4),
                                          make_log_utility_agent(1.5, 0.5, 0.4)};
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::complete, 2));
  GammaSchedule sched = GammaSchedule::sqrt_rule(1.0);
  DualTrace tr = run_dual_decomp(agents, p, sched, Mat(2, 1, 0.0), 5);

  std::vector<double> c = {1.0, 1.5}, d = {1.0, 0.5};
  CoupledTruth truth = solve_example_dual_bisection(c, d, 0.8);
  DualMetrics m = measure_dual_metrics(tr, agents, &truth);

  REQUIRE(m.dual_value.size() == 5);
  for (size_t r = 0; r < 5; ++r)
    for (int i = 0; i < 2; ++i) {
      double direct = 0.0;
      for (int j = 0; j < 2; ++j) direct += psi_eval(agents[j], tr.lam[r].row(i)).value;
      CHECK(m.dual_value[r][i] == doctest::Approx(direct).epsilon(1e-13));
    }

  // dual_err subtracts the dual optimum; the summed psi is convex and
  // minimized at lambda*, so the error is never negative.
  double star = 0.0;
  std::vector<double> ls = {truth.lambda_star};
  for (int j = 0; j < 2; ++j) star += psi_eval(agents[j], ls).value;
  for (size_t r = 0; r < 5; ++r)
    for (int i = 0; i < 2; ++i) {
      CHECK(m.dual_err[r][i] == doctest::Approx(m.dual_value[r][i] - star).epsilon(1e-13));
      CHECK(m.dual_err[r][i] >= -1e-12);
    }

  CHECK(m.penalty == tr.penalty);
  REQUIRE(m.primal_err.size() == 5);
  for (size_t k = 0; k < 5; ++k)
    CHECK(m.primal_err[k] == doctest::Approx(tr.primal_value[k] - truth.f_star).epsilon(1e-13));
}

TEST_CASE("duality gap constant for the scalar family") {
  // Each f_j = c x is minimized at 0 on [0, 1], so psi_j(0) = 0 and the
  // constant collapses to f_star.
  std::vector<CoupledAgentSpec> agents = {make_log_utility_agent(1.0, 1.0, 0.4),
                                          make_log_utility_agent(2.0, 1.0, 0.4)};
  CHECK(duality_gap_constant(agents, 1.25) == doctest::Approx(1.25));
}
