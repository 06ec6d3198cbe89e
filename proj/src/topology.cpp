#include "dsa2/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "dsa2/errors.hpp"
#include "dsa2/rng.hpp"

namespace dsa2 {

namespace {

std::pair<int, int> norm_edge(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

}  // namespace

Topology make_topology(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 1) throw ConfigError("topology: node count must be >= 1");
  for (auto& e : edges) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
      throw ConfigError("topology: edge endpoint out of range");
    if (e.first == e.second) throw ConfigError("topology: self loop");
    e = norm_edge(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ConfigError("topology: duplicate edge");
  return Topology{n, std::move(edges)};
}

Topology gen_named(GraphKind kind, int n) {
  int min_n = kind == GraphKind::cycle ? 3 : 2;
  if (n < min_n) throw ConfigError("gen_named: n too small for the requested graph kind");
  std::vector<std::pair<int, int>> e;
  switch (kind) {
    case GraphKind::path:
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      break;
    case GraphKind::cycle:
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(0, n - 1);
      break;
    case GraphKind::complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
      break;
    case GraphKind::star:
      for (int i = 1; i < n; ++i) e.emplace_back(0, i);
      break;
  }
  return make_topology(n, std::move(e));
}

Topology gen_small_world(int n, int k, double p_rewire, std::uint64_t seed) {
  if (k < 2 || k % 2 != 0) throw ConfigError("gen_small_world: k must be even and >= 2");
  if (n <= k) throw ConfigError("gen_small_world: requires n > k");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) throw ConfigError("gen_small_world: p_rewire must be in [0,1]");

  for (std::uint64_t attempt_seed = seed;; ++attempt_seed) {
    SplitMix64 rng(attempt_seed);
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int off = 1; off <= k / 2; ++off) edges.insert(norm_edge(i, (i + off) % n));

    // Visit original lattice edges in construction order; the edge set
    // mutates as we go, which is what makes later duplicate checks see
    // earlier rewires.
    for (int i = 0; i < n; ++i) {
      for (int off = 1; off <= k / 2; ++off) {
        if (rng.next_double() >= p_rewire) continue;
        std::pair<int, int> old_edge = norm_edge(i, (i + off) % n);
        if (!edges.count(old_edge)) continue;  // already rewired away by an earlier step
        // Degree n-1 means no free slot at i; leave the edge alone.
        int deg_i = 0;
        for (auto& e : edges) deg_i += (e.first == i || e.second == i);
        if (deg_i == n - 1) continue;
        edges.erase(old_edge);
        for (;;) {
          int w = rng.next_below(n);
          if (w == i) continue;
          auto cand = norm_edge(i, w);
          if (edges.count(cand)) continue;
          edges.insert(cand);
          break;
        }
      }
    }

    Topology t = make_topology(n, std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
    if (is_connected(t)) return t;
  }
}

bool is_connected(const Topology& t) {
  if (t.n <= 1) return true;
  std::vector<std::vector<int>> adj(t.n);
  for (auto& e : t.edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<char> seen(t.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == t.n;
}

std::vector<int> degrees(const Topology& t) {
  std::vector<int> deg(t.n, 0);
  for (auto& e : t.edges) {
    ++deg[e.first];
    ++deg[e.second];
  }
  return deg;
}

std::string to_edge_list(const Topology& t) {
  std::string out = std::to_string(t.n) + "\n";
  for (auto& e : t.edges) out += std::to_string(e.first) + " " + std::to_string(e.second) + "\n";
  return out;
}

Topology parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n)) throw ConfigError("edge list: missing node count");
  std::vector<std::pair<int, int>> edges;
  int a = 0, b = 0;
  while (in >> a) {
    if (!(in >> b)) throw ConfigError("edge list: dangling endpoint");
    edges.emplace_back(a, b);
  }
  if (!in.eof()) throw ConfigError("edge list: trailing garbage");
  return make_topology(n, std::move(edges));
}

WeightMatrix metropolis_weights(const Topology& t) {
  if (!is_connected(t)) throw ConfigError("metropolis_weights: topology must be connected");
  std::vector<int> deg = degrees(t);
  WeightMatrix p;
  p.n = t.n;
  p.w.assign(static_cast<size_t>(t.n) * t.n, 0.0);
  p.nbrs.assign(t.n, {});
  for (auto& e : t.edges) {
    double w = 1.0 / (1.0 + std::max(deg[e.first], deg[e.second]));
    p.w[static_cast<size_t>(e.first) * t.n + e.second] = w;
    p.w[static_cast<size_t>(e.second) * t.n + e.first] = w;
    p.nbrs[e.first].push_back(e.second);
    p.nbrs[e.second].push_back(e.first);
  }
  for (int i = 0; i < t.n; ++i) {
    std::sort(p.nbrs[i].begin(), p.nbrs[i].end());
    double off = 0.0;
    for (int j : p.nbrs[i]) off += p.at(i, j);
    p.w[static_cast<size_t>(i) * t.n + i] = 1.0 - off;
  }
  return p;
}

WeightMatrix weight_matrix_from_dense(int n, std::vector<double> entries) {
  if (n < 1) throw ConfigError("weight matrix: n must be >= 1");
  if (entries.size() != static_cast<size_t>(n) * n) throw ConfigError("weight matrix: wrong entry count");
  WeightMatrix p;
  p.n = n;
  p.w = std::move(entries);
  p.nbrs.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i && p.at(i, j) != 0.0) p.nbrs[i].push_back(j);
  return p;
}

void check_doubly_stochastic(const WeightMatrix& p, double tol) {
  for (int i = 0; i < p.n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < p.n; ++j) {
      if (p.at(i, j) < 0.0) throw ConfigError("weight matrix: negative entry");
      row += p.at(i, j);
      col += p.at(j, i);
    }
    if (std::fabs(row - 1.0) > tol || std::fabs(col - 1.0) > tol)
      throw ConfigError("weight matrix: rows and columns must sum to 1");
  }
}

double sigma2(const WeightMatrix& p) {
  check_doubly_stochastic(p);
  int n = p.n;
  // A = P - (1/n) 1 1^T, B = A^T A. Dense is fine at the sizes used here.
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = p.at(i, j) - 1.0 / n;
  std::vector<double> b(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aki = a[static_cast<size_t>(k) * n + i];
      if (aki == 0.0) continue;
      for (int j = 0; j < n; ++j) b[static_cast<size_t>(i) * n + j] += aki * a[static_cast<size_t>(k) * n + j];
    }

  // Deterministic start vector with components along every eigendirection
  // w.h.p.; the fixed seed keeps sigma2 itself reproducible.
  SplitMix64 rng(0x5eed5eed5eed5eedULL);
  std::vector<double> v(n), bv(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);

  double rho_old = -1.0;
  const int cap = 100000;
  for (int it = 0; it < cap; ++it) {
    double nv = 0.0;
    for (int i = 0; i < n; ++i) nv += v[i] * v[i];
    nv = std::sqrt(nv);
    if (nv == 0.0) return 0.0;
    for (int i = 0; i < n; ++i) v[i] /= nv;

    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = &b[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) s += row[j] * v[j];
      bv[i] = s;
    }
    double rho = 0.0;
    for (int i = 0; i < n; ++i) rho += v[i] * bv[i];
    if (rho <= 0.0) return 0.0;  // deflated matrix is (numerically) zero
    if (std::fabs(rho - rho_old) <= 1e-10 * rho) return std::sqrt(rho);
    rho_old = rho;
    v = bv;
  }
  throw NumericError("sigma2: power iteration did not converge within 100000 iterations");
}

}  // namespace dsa2
