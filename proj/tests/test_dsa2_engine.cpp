#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dsa2/dsa2_engine.hpp"
#include "dsa2/errors.hpp"
#include "test_support.hpp"

using namespace dsa2;

TEST_CASE("gamma schedules") {
  GammaSchedule s = GammaSchedule::sqrt_rule(0.5);
  CHECK(s.at(0) == doctest::Approx(0.5));
  CHECK(s.at(3) == doctest::Approx(1.0));
  CHECK(s.at(-1) == s.at(0));

  GammaSchedule t = GammaSchedule::from_table({1.0, 2.0});
  CHECK(t.at(0) == 1.0);
  CHECK(t.at(1) == 2.0);
  CHECK(t.at(5) == 2.0);  // last entry extends
  CHECK(t.at(-1) == 1.0);

  CHECK_THROWS_AS(GammaSchedule::sqrt_rule(0.0), ConfigError);
  CHECK_THROWS_AS(GammaSchedule::from_table({}), ConfigError);
  CHECK_THROWS_AS(GammaSchedule::from_table({1.0, 0.5}), ConfigError);
  CHECK_THROWS_AS(GammaSchedule::from_table({-1.0}), ConfigError);
}

TEST_CASE("optimal stepsize scale") {
  // n = 1, sigma2 = 0: sqrt(6 + 13).
  CHECK(optimal_gamma(1.0, 1.0, 1, 0.0) == doctest::Approx(std::sqrt(19.0)));
  CHECK(optimal_gamma(2.0, 0.5, 1, 0.0) == doctest::Approx(4.0 * std::sqrt(19.0)));
  CHECK_THROWS_AS(optimal_gamma(1.0, 1.0, 1, 1.0), ConfigError);
  CHECK_THROWS_AS(optimal_gamma(0.0, 1.0, 1, 0.0), ConfigError);
  CHECK_THROWS_AS(optimal_gamma(1.0, 0.0, 1, 0.0), ConfigError);
}

TEST_CASE("initialization") {
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-1.0}, {1.0}));
  std::vector<LocalObjective> fs = {make_abs_linear_objective({1.0}, setup.norm)};
  Mat x0(1, 1, 0.5);
  Dsa2State st = dsa2_init(fs, setup, x0);
  CHECK(st.t == 0);
  CHECK(st.x.at(0, 0) == 0.5);
  CHECK(st.x_hat.at(0, 0) == 0.5);
  CHECK(st.tracker.s.at(0, 0) == 1.0);  // sign(0.5) * a

  Mat bad(1, 1, 2.0);
  CHECK_THROWS_AS(dsa2_init(fs, setup, bad), ConfigError);
}

// Single agent, f(x) = |x| on [-1, 1], x0 = 1, gamma_t = sqrt(t+1). Every
// quantity below is reproducible by hand from the three update rules.
TEST_CASE("hand-computed single-agent trajectory") {
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-1.0}, {1.0}));
  std::vector<LocalObjective> fs = {make_abs_linear_objective({1.0}, setup.norm)};
  WeightMatrix p = weight_matrix_from_dense(1, {1.0});
  GammaSchedule sched = GammaSchedule::sqrt_rule(1.0);

  Dsa2State st = dsa2_init(fs, setup, Mat(1, 1, 1.0));

  const double x2 = -1.0 / (3.0 * std::sqrt(2.0));
  const double x3 = 3.0 * x2 / 4.0;
  const double x4 = (4.0 * x3 + 0.5) / 5.0;
  const double x5 = (5.0 * x4 + 2.0 / std::sqrt(5.0)) / 6.0;
  const double xhat[5] = {-1.0, -1.0 / std::sqrt(2.0), 0.0, 0.5, 2.0 / std::sqrt(5.0)};
  const double xavg[5] = {0.0, x2, x3, x4, x5};

  for (int r = 0; r < 5; ++r) {
    dsa2_round(st, fs, setup, p, sched);
    CHECK(st.t == r + 1);
    CHECK(st.x_hat.at(0, 0) == doctest::Approx(xhat[r]).epsilon(1e-15));
    CHECK(st.x.at(0, 0) == doctest::Approx(xavg[r]).epsilon(1e-15));
  }
}

TEST_CASE("trace recording") {
  SplitMix64 rng(5);
  testing::RandomInstance inst = testing::random_instance(rng, 3, 2, 0);
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::cycle, 3));
  GammaSchedule sched = GammaSchedule::sqrt_rule(1.0);

  PrimalTrace full = run_dsa2(inst.objectives, inst.setup, p, sched, inst.x0, 6);
  REQUIRE(full.t.size() == 6);
  CHECK(full.t.front() == 1);
  CHECK(full.t.back() == 6);
  CHECK(full.n == 3);
  CHECK(full.m == 2);
  REQUIRE(full.x.size() == 6);
  REQUIRE(full.gsum.size() == 6);

  PrimalTrace sparse = run_dsa2(inst.objectives, inst.setup, p, sched, inst.x0, 6, {2, 5});
  REQUIRE(sparse.t == std::vector<long>{2, 5});
  CHECK(sparse.x[0].a == full.x[1].a);
  CHECK(sparse.x[1].a == full.x[4].a);
  CHECK(sparse.z[0].a == full.z[1].a);
  CHECK(sparse.gsum[1] == full.gsum[4]);

  CHECK_THROWS_AS(run_dsa2(inst.objectives, inst.setup, p, sched, inst.x0, 6, {5, 2}),
                  ConfigError);
  CHECK_THROWS_AS(run_dsa2(inst.objectives, inst.setup, p, sched, inst.x0, 6, {0}), ConfigError);
  CHECK_THROWS_AS(run_dsa2(inst.objectives, inst.setup, p, sched, inst.x0, 6, {7}), ConfigError);
  CHECK_THROWS_AS(run_dsa2(inst.objectives, inst.setup, p, sched, inst.x0, 0), ConfigError);
}

TEST_CASE("gsum accumulates the exact average gradient") {
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0}));
  std::vector<LocalObjective> fs = {make_abs_linear_objective({1.0, 0.0}, setup.norm),
                                    make_abs_linear_objective({0.0, 1.0}, setup.norm)};
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::complete, 2));
  GammaSchedule sched = GammaSchedule::sqrt_rule(1.0);
  Mat x0(2, 2, 0.5);

  PrimalTrace tr = run_dsa2(fs, setup, p, sched, x0, 3);

  // Replay the run and accumulate mean gradients by hand.
  Dsa2State st = dsa2_init(fs, setup, x0);
  std::vector<double> acc(2, 0.0);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) acc[j] += st.tracker.last_grad.at(i, j) / 2.0;
  for (int r = 0; r < 3; ++r) {
    dsa2_round(st, fs, setup, p, sched);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) acc[j] += st.tracker.last_grad.at(i, j) / 2.0;
    CHECK(tr.gsum[r][0] == doctest::Approx(acc[0]).epsilon(1e-15));
    CHECK(tr.gsum[r][1] == doctest::Approx(acc[1]).epsilon(1e-15));
  }
}

TEST_CASE("two opposed agents agree near the minimizer") {
  // f1 = |x|, f2 = |x| as well via a = +1 / -1; global minimum at 0.
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-1.0}, {1.0}));
  std::vector<LocalObjective> fs = {make_abs_linear_objective({1.0}, setup.norm),
                                    make_abs_linear_objective({-1.0}, setup.norm)};
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::complete, 2));
  GammaSchedule sched = GammaSchedule::sqrt_rule(std::sqrt(19.0));
  Mat x0(2, 1);
  x0.at(0, 0) = 1.0;
  x0.at(1, 0) = -1.0;

  PrimalTrace tr = run_dsa2(fs, setup, p, sched, x0, 400, {400});
  CHECK(std::fabs(tr.x[0].at(0, 0)) < 0.1);
  CHECK(std::fabs(tr.x[0].at(1, 0)) < 0.1);
  CHECK(std::fabs(tr.x[0].at(0, 0) - tr.x[0].at(1, 0)) < 0.05);
}

TEST_CASE("mixing matrix is validated") {
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-1.0}, {1.0}));
  std::vector<LocalObjective> fs = {make_abs_linear_objective({1.0}, setup.norm),
                                    make_abs_linear_objective({1.0}, setup.norm)};
  GammaSchedule sched = GammaSchedule::sqrt_rule(1.0);
  Mat x0(2, 1, 0.0);
  WeightMatrix bad = weight_matrix_from_dense(2, {0.6, 0.4, 0.5, 0.5});
  CHECK_THROWS_AS(run_dsa2(fs, setup, bad, sched, x0, 2), ConfigError);
  WeightMatrix wrong_n = weight_matrix_from_dense(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK_THROWS_AS(run_dsa2(fs, setup, wrong_n, sched, x0, 2), ConfigError);
}
