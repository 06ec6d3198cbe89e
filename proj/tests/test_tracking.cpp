#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "dsa2/errors.hpp"
#include "dsa2/tracking.hpp"
#include "test_support.hpp"

using namespace dsa2;

namespace {
Mat mat(int r, int c, std::initializer_list<double> vals) {
  Mat m(r, c);
  int k = 0;
  for (double v : vals) m.a[k++] = v;
  return m;
}
}  // namespace

TEST_CASE("initialization copies the gradients") {
  Mat g = mat(2, 2, {1.0, 2.0, 3.0, 4.0});
  TrackerState st = init_tracking(g);
  CHECK(st.s.a == g.a);
  CHECK(st.z.a == g.a);
  CHECK(st.last_grad.a == g.a);
}

TEST_CASE("one mixing step on the complete pair") {
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::complete, 2));
  TrackerState st = init_tracking(mat(2, 1, {0.0, 2.0}));
  // Gradients unchanged: the correction cancels, only mixing acts.
  tracking_step(st, p, st.last_grad);
  CHECK(st.s.at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.s.at(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.z.at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.z.at(1, 0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("gradient swap feeds through the correction term") {
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::complete, 2));
  TrackerState st = init_tracking(mat(2, 1, {1.0, -1.0}));
  // New gradients (0, 0): s = mix(s) - old + new = (0, 0) - (1, -1) = (-1, 1).
  tracking_step(st, p, mat(2, 1, {0.0, 0.0}));
  CHECK(st.s.at(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(st.s.at(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.last_grad.at(0, 0) == 0.0);
}

TEST_CASE("conservation: mean signal tracks mean gradient") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 3 + rng.next_below(6);
    int m = 1 + rng.next_below(3);
    WeightMatrix p = metropolis_weights(testing::random_connected_topology(rng, n));
    Mat g(n, m);
    for (double& v : g.a) v = rng.uniform(-5.0, 5.0);
    TrackerState st = init_tracking(g);
    for (int t = 0; t < 50; ++t) {
      Mat fresh(n, m);
      for (double& v : fresh.a) v = rng.uniform(-5.0, 5.0);
      tracking_step(st, p, fresh);
      for (int j = 0; j < m; ++j) {
        double mean_s = 0.0, mean_g = 0.0;
        for (int i = 0; i < n; ++i) {
          mean_s += st.s.at(i, j);
          mean_g += st.last_grad.at(i, j);
        }
        CHECK(std::fabs(mean_s - mean_g) / n <= 1e-12);
      }
    }
  }
}

TEST_CASE("single agent tracking is bitwise exact") {
  WeightMatrix p = weight_matrix_from_dense(1, {1.0});
  SplitMix64 rng(99);
  TrackerState st = init_tracking(mat(1, 1, {rng.uniform(-1.0, 1.0)}));
  double zsum = st.s.at(0, 0);
  for (int t = 0; t < 100; ++t) {
    Mat fresh = mat(1, 1, {rng.uniform(-1.0, 1.0)});
    tracking_step(st, p, fresh);
    // With n = 1 the signal IS the gradient, with no rounding slack at all.
    CHECK(st.s.at(0, 0) == fresh.at(0, 0));
    zsum += fresh.at(0, 0);
    CHECK(st.z.at(0, 0) == zsum);
  }
}

TEST_CASE("shape mismatches are rejected") {
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::complete, 2));
  TrackerState st = init_tracking(mat(2, 1, {0.0, 1.0}));
  CHECK_THROWS_AS(tracking_step(st, p, mat(2, 2, {0.0, 0.0, 0.0, 0.0})), ConfigError);
  CHECK_THROWS_AS(tracking_step(st, p, mat(3, 1, {0.0, 0.0, 0.0})), ConfigError);
}
