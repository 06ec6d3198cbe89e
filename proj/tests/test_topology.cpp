#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dsa2/errors.hpp"
#include "dsa2/topology.hpp"
#include "test_support.hpp"

using namespace dsa2;

TEST_CASE("make_topology normalizes and validates") {
  Topology t = make_topology(4, {{3, 1}, {0, 1}});
  CHECK(t.n == 4);
  REQUIRE(t.edges.size() == 2);
  CHECK(t.edges[0] == std::pair<int, int>(0, 1));
  CHECK(t.edges[1] == std::pair<int, int>(1, 3));

  CHECK_THROWS_AS(make_topology(3, {{1, 1}}), ConfigError);
  CHECK_THROWS_AS(make_topology(3, {{0, 1}, {1, 0}}), ConfigError);
  CHECK_THROWS_AS(make_topology(3, {{0, 3}}), ConfigError);
  CHECK_THROWS_AS(make_topology(0, {}), ConfigError);
}

TEST_CASE("named generators") {
  Topology path = gen_named(GraphKind::path, 4);
  CHECK(path.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});

  Topology cyc = gen_named(GraphKind::cycle, 4);
  CHECK(cyc.edges.size() == 4);
  CHECK(std::count(cyc.edges.begin(), cyc.edges.end(), std::pair<int, int>(0, 3)) == 1);
  CHECK_THROWS_AS(gen_named(GraphKind::cycle, 2), ConfigError);

  Topology star = gen_named(GraphKind::star, 5);
  std::vector<int> deg = degrees(star);
  CHECK(deg[0] == 4);
  for (int i = 1; i < 5; ++i) CHECK(deg[i] == 1);

  Topology comp = gen_named(GraphKind::complete, 4);
  CHECK(comp.edges.size() == 6);

  CHECK_THROWS_AS(gen_named(GraphKind::path, 1), ConfigError);
}

TEST_CASE("small world generator") {
  // p = 0: the untouched ring lattice. n=4, k=2 is the 4-cycle.
  Topology ring = gen_small_world(4, 2, 0.0, 0);
  CHECK(ring.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

  // n=3, k=2: rewiring has nowhere to go, any p yields the triangle.
  Topology tri = gen_small_world(3, 2, 1.0, 7);
  CHECK(tri.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});

  Topology sw = gen_small_world(50, 4, 0.2, 42);
  CHECK(sw.n == 50);
  CHECK(sw.edges.size() == 100);  // n*k/2 regardless of rewiring
  CHECK(is_connected(sw));

  // Same seed reproduces the graph exactly.
  Topology again = gen_small_world(50, 4, 0.2, 42);
  CHECK(sw.edges == again.edges);

  CHECK_THROWS_AS(gen_small_world(4, 3, 0.1, 1), ConfigError);   // odd k
  CHECK_THROWS_AS(gen_small_world(4, 4, 0.1, 1), ConfigError);   // n <= k
  CHECK_THROWS_AS(gen_small_world(10, 2, 1.5, 1), ConfigError);  // p out of range
}

TEST_CASE("connectivity and degrees") {
  CHECK(is_connected(gen_named(GraphKind::path, 6)));
  CHECK_FALSE(is_connected(make_topology(4, {{0, 1}, {2, 3}})));
  CHECK_FALSE(is_connected(make_topology(2, {})));

  std::vector<int> deg = degrees(gen_named(GraphKind::path, 3));
  CHECK(deg == std::vector<int>{1, 2, 1});
}

TEST_CASE("edge list round trip") {
  Topology t = gen_small_world(12, 4, 0.3, 5);
  Topology back = parse_edge_list(to_edge_list(t));
  CHECK(back.n == t.n);
  CHECK(back.edges == t.edges);

  CHECK_THROWS_AS(parse_edge_list(""), ConfigError);
  CHECK_THROWS_AS(parse_edge_list("2\n0 2\n"), ConfigError);  // endpoint out of range
  CHECK_THROWS_AS(parse_edge_list("abc\n"), ConfigError);
}

TEST_CASE("metropolis weights on the 3-path") {
  WeightMatrix p = metropolis_weights(gen_named(GraphKind::path, 3));
  CHECK(p.at(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.at(1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.at(0, 2) == 0.0);
  CHECK(p.at(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p.at(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.at(2, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_NOTHROW(check_doubly_stochastic(p));
  CHECK(p.nbrs[1] == std::vector<int>{0, 2});
}

TEST_CASE("metropolis requires a connected graph") {
  CHECK_THROWS_AS(metropolis_weights(make_topology(4, {{0, 1}, {2, 3}})), ConfigError);
}

TEST_CASE("doubly stochastic check rejects bad matrices") {
  // Row sums fine, column sums off.
  CHECK_THROWS_AS(check_doubly_stochastic(weight_matrix_from_dense(2, {0.6, 0.4, 0.5, 0.5})),
                  ConfigError);
  // Negative entry.
  CHECK_THROWS_AS(check_doubly_stochastic(weight_matrix_from_dense(2, {1.2, -0.2, -0.2, 1.2})),
                  ConfigError);
  CHECK_THROWS_AS(weight_matrix_from_dense(2, {1.0, 0.0, 0.0}), ConfigError);
}

TEST_CASE("sigma2 closed forms") {
  // Complete graphs mix to the average in one step: sigma2 = 0.
  CHECK(sigma2(metropolis_weights(gen_named(GraphKind::complete, 2))) ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sigma2(metropolis_weights(gen_named(GraphKind::complete, 3))) ==
        doctest::Approx(0.0).epsilon(1e-9));

  // 3-path: spectrum of P is {1, 2/3, 0}.
  CHECK(sigma2(metropolis_weights(gen_named(GraphKind::path, 3))) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));

  // 4-cycle: circulant eigenvalues (1 + 2 cos(2 pi k / 4)) / 3.
  CHECK(sigma2(metropolis_weights(gen_named(GraphKind::cycle, 4))) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("sigma2 agrees with a dense eigensolver on random graphs") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + rng.next_below(3);  // 2..4
    Topology t = testing::random_connected_topology(rng, n);
    WeightMatrix p = metropolis_weights(t);
    double fast = sigma2(p);
    double slow = testing::sigma2_by_jacobi(p);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-8));
    CHECK(fast >= 0.0);
    CHECK(fast < 1.0);  // connected + positive diagonal
  }
}
