#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dsa2 {

// Undirected simple graph on nodes 0..n-1. Edges are stored normalized
// (i < j) and sorted; no self loops, no duplicates.
struct Topology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Validates and normalizes: sorts edges, rejects self loops / duplicates /
// out-of-range endpoints.
Topology make_topology(int n, std::vector<std::pair<int, int>> edges);

enum class GraphKind { path, cycle, complete, star };

// path: 0-1-2-..., cycle: path + closing edge, complete: all pairs,
// star: node 0 is the hub. n >= 2 (cycle needs n >= 3).
Topology gen_named(GraphKind kind, int n);

// Watts-Strogatz small world: ring lattice where each node links to its k/2
// clockwise neighbors, then each lattice edge (u, v) is rewired with
// probability p_rewire to (u, w) with w resampled until it is neither u nor
// an existing neighbor of u. Edges are visited in lattice order (node, then
// offset). If the result is disconnected the whole construction retries with
// seed+1, seed+2, ... Edge count is always n*k/2.
// Requires n > k >= 2, k even, p_rewire in [0, 1].
Topology gen_small_world(int n, int k, double p_rewire, std::uint64_t seed);

bool is_connected(const Topology& t);

std::vector<int> degrees(const Topology& t);

// Text form: first line "n", then one "i j" line per edge in ascending
// order. Round-trips through parse_edge_list.
std::string to_edge_list(const Topology& t);
Topology parse_edge_list(const std::string& text);

// Symmetric doubly stochastic mixing matrix. Dense storage plus explicit
// neighbor lists so consumers mix only over j in N_i union {i}.
struct WeightMatrix {
  int n = 0;
  std::vector<double> w;                // dense row-major n*n
  std::vector<std::vector<int>> nbrs;   // ascending off-diagonal support per row

  double at(int i, int j) const { return w[static_cast<size_t>(i) * n + j]; }
};

// w_ij = 1/(1 + max(deg_i, deg_j)) on edges, diagonal takes the slack.
// Requires a connected topology; the result is symmetric, doubly
// stochastic, and has strictly positive diagonal.
WeightMatrix metropolis_weights(const Topology& t);

// Wraps a dense row-major matrix, inferring neighbor lists from the
// off-diagonal nonzero pattern. Validates square shape and entry count.
WeightMatrix weight_matrix_from_dense(int n, std::vector<double> entries);

// Throws ConfigError unless row sums and column sums are 1 within tol and
// all entries are nonnegative.
void check_doubly_stochastic(const WeightMatrix& p, double tol = 1e-9);

// Second-largest singular value: power iteration on A^T A for
// A = P - (1/n) 1 1^T, relative tolerance 1e-10 on the eigenvalue estimate,
// iteration cap 100000 (NumericError past the cap).
double sigma2(const WeightMatrix& p);

}  // namespace dsa2
