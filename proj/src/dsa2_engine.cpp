#include "dsa2/dsa2_engine.hpp"

#include <cmath>

#include "dsa2/errors.hpp"

namespace dsa2 {

GammaSchedule GammaSchedule::sqrt_rule(double gamma0) {
  if (!(gamma0 > 0.0)) throw ConfigError("gamma schedule: gamma0 must be positive");
  return {gamma0, {}};
}

GammaSchedule GammaSchedule::from_table(std::vector<double> values) {
  if (values.empty()) throw ConfigError("gamma schedule: empty table");
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw ConfigError("gamma schedule: table entries must be positive");
    if (i > 0 && values[i] < values[i - 1]) throw ConfigError("gamma schedule: table must be non-decreasing");
  }
  return {values[0], std::move(values)};
}

double GammaSchedule::at(long t) const {
  if (t < 0) t = 0;
  if (table.empty()) return gamma0 * std::sqrt(static_cast<double>(t + 1));
  size_t i = static_cast<size_t>(t);
  return i < table.size() ? table[i] : table.back();
}

Dsa2State dsa2_init(const std::vector<LocalObjective>& fs, const ProxSetup& setup, const Mat& x0) {
  const int n = static_cast<int>(fs.size());
  if (n < 1) throw ConfigError("dsa2: need at least one agent");
  if (x0.rows != n || x0.cols != setup.set.dim) throw ConfigError("dsa2: x0 shape mismatch");
  for (int i = 0; i < n; ++i)
    if (!setup.set.contains(x0.row(i), 1e-9)) throw ConfigError("dsa2: infeasible initial point");

  Mat g0(n, setup.set.dim);
  for (int i = 0; i < n; ++i) {
    auto gi = fs[i].subgrad(x0.row(i));
    if (static_cast<int>(gi.size()) != setup.set.dim) throw ConfigError("dsa2: subgradient dimension mismatch");
    for (int c = 0; c < setup.set.dim; ++c) g0.at(i, c) = gi[c];
  }
  return Dsa2State{0, x0, x0, init_tracking(g0)};
}

void dsa2_round(Dsa2State& st, const std::vector<LocalObjective>& fs, const ProxSetup& setup,
                const WeightMatrix& p, const GammaSchedule& sched) {
  const int n = st.x.rows, m = st.x.cols;
  const double gamma = sched.at(st.t);
  const double tt = static_cast<double>(st.t);

  Mat grads(n, m);
  for (int i = 0; i < n; ++i) {
    auto xh = prox_map(st.tracker.z.row(i), gamma, setup);
    for (int c = 0; c < m; ++c) {
      st.x_hat.at(i, c) = xh[c];
      st.x.at(i, c) = ((tt + 1.0) * st.x.at(i, c) + xh[c]) / (tt + 2.0);
    }
    auto gi = fs[i].subgrad(st.x.row(i));
    for (int c = 0; c < m; ++c) grads.at(i, c) = gi[c];
  }
  tracking_step(st.tracker, p, grads);
  ++st.t;
}

void check_record_at(long rounds, const std::vector<long>& record_at) {
  long prev = 0;
  for (long t : record_at) {
    if (t < 1 || t > rounds) throw ConfigError("record_at: rounds must lie in [1, rounds]");
    if (t <= prev) throw ConfigError("record_at: rounds must be strictly ascending");
    prev = t;
  }
}

PrimalTrace run_dsa2(const std::vector<LocalObjective>& fs, const ProxSetup& setup,
                     const WeightMatrix& p, const GammaSchedule& sched, const Mat& x0, long rounds,
                     const std::vector<long>& record_at) {
  if (rounds < 1) throw ConfigError("run_dsa2: round count must be >= 1");
  check_record_at(rounds, record_at);
  const int n = static_cast<int>(fs.size());
  if (p.n != n) throw ConfigError("run_dsa2: weight matrix size mismatch");
  check_doubly_stochastic(p);

  Dsa2State st = dsa2_init(fs, setup, x0);
  const int m = setup.set.dim;

  PrimalTrace tr;
  tr.n = n;
  tr.m = m;
  std::vector<double> gsum(m);
  for (int c = 0; c < m; ++c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += st.tracker.last_grad.at(i, c);
    gsum[c] = s / n;
  }

  size_t next_rec = 0;
  for (long t = 1; t <= rounds; ++t) {
    dsa2_round(st, fs, setup, p, sched);
    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += st.tracker.last_grad.at(i, c);
      gsum[c] += s / n;
    }
    bool rec = record_at.empty();
    if (!rec && next_rec < record_at.size() && record_at[next_rec] == t) {
      rec = true;
      ++next_rec;
    }
    if (rec) {
      tr.t.push_back(t);
      tr.x.push_back(st.x);
      tr.x_hat.push_back(st.x_hat);
      tr.z.push_back(st.tracker.z);
      tr.gsum.push_back(gsum);
    }
  }
  return tr;
}

double optimal_gamma(double lip, double radius, int n, double sig2) {
  if (!(lip > 0.0) || !(radius > 0.0)) throw ConfigError("optimal_gamma: L and R must be positive");
  if (n < 1 || !(sig2 >= 0.0) || !(sig2 < 1.0)) throw ConfigError("optimal_gamma: need n >= 1 and sigma2 in [0,1)");
  return lip / radius * std::sqrt(6.0 * std::sqrt(static_cast<double>(n)) / (1.0 - sig2) + 13.0);
}

}  // namespace dsa2
