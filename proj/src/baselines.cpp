#include "dsa2/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "dsa2/errors.hpp"
#include "dsa2/tracking.hpp"

namespace dsa2 {

PrimalTrace run_dda(const std::vector<LocalObjective>& fs, const ProxSetup& setup, const WeightMatrix& p,
                    const GammaSchedule& sched, const Mat& x0, long rounds,
                    const std::vector<long>& record_at) {
  if (rounds < 1) throw ConfigError("run_dda: round count must be >= 1");
  check_record_at(rounds, record_at);
  const int n = static_cast<int>(fs.size());
  const int m = setup.set.dim;
  if (p.n != n) throw ConfigError("run_dda: weight matrix size mismatch");
  if (x0.rows != n || x0.cols != m) throw ConfigError("run_dda: x0 shape mismatch");
  check_doubly_stochastic(p);

  Mat x = x0, xh = x0;
  Mat g0(n, m);
  for (int i = 0; i < n; ++i) {
    auto gi = fs[i].subgrad(xh.row(i));
    for (int c = 0; c < m; ++c) g0.at(i, c) = gi[c];
  }
  TrackerState tracker = init_tracking(g0);

  PrimalTrace tr;
  tr.n = n;
  tr.m = m;
  std::vector<double> gsum(m);
  for (int c = 0; c < m; ++c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += tracker.last_grad.at(i, c);
    gsum[c] = s / n;
  }

  Mat grads(n, m);
  size_t next_rec = 0;
  for (long t = 1; t <= rounds; ++t) {
    const double gamma = sched.at(t - 1);
    const double tt = static_cast<double>(t - 1);
    for (int i = 0; i < n; ++i) {
      auto xhi = prox_map(tracker.z.row(i), gamma, setup);
      for (int c = 0; c < m; ++c) {
        xh.at(i, c) = xhi[c];
        x.at(i, c) = ((tt + 1.0) * x.at(i, c) + xhi[c]) / (tt + 2.0);
      }
      // The one departure from the double-averaging engine: subgradients at
      // the prox point, not the running average.
      auto gi = fs[i].subgrad(xh.row(i));
      for (int c = 0; c < m; ++c) grads.at(i, c) = gi[c];
    }
    tracking_step(tracker, p, grads);

    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += tracker.last_grad.at(i, c);
      gsum[c] += s / n;
    }
    bool rec = record_at.empty();
    if (!rec && next_rec < record_at.size() && record_at[next_rec] == t) {
      rec = true;
      ++next_rec;
    }
    if (rec) {
      tr.t.push_back(t);
      tr.x.push_back(x);
      tr.x_hat.push_back(xh);
      tr.z.push_back(tracker.z);
      tr.gsum.push_back(gsum);
    }
  }
  return tr;
}

DualTrace run_dda_dual(const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
                       const GammaSchedule& sched, const Mat& lam0, long rounds,
                       const std::vector<long>& record_at) {
  if (rounds < 1) throw ConfigError("run_dda_dual: round count must be >= 1");
  check_record_at(rounds, record_at);
  const int n = static_cast<int>(agents.size());
  if (p.n != n) throw ConfigError("run_dda_dual: weight matrix size mismatch");
  check_doubly_stochastic(p);

  DualState st = dd_init(agents, lam0);  // lam and lam_hat both start at lam0
  const int m = st.lam.cols;

  DualTrace tr;
  tr.n = n;
  tr.m = m;
  std::vector<double> gsum(m);
  for (int c = 0; c < m; ++c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += st.tracker.last_grad.at(i, c);
    gsum[c] = s / n;
  }

  Mat grads(n, m);
  std::vector<double> hsum(m);
  size_t next_rec = 0;
  for (long t = 1; t <= rounds; ++t) {
    const double gamma = sched.at(t - 1);
    const double tt = static_cast<double>(t - 1);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < m; ++c) {
        double hat = std::max(0.0, -st.tracker.z.at(i, c) / gamma);
        st.lam.at(i, c) = hat;  // test point: the prox output itself
        st.lam_hat.at(i, c) = ((tt + 1.0) * st.lam_hat.at(i, c) + hat) / (tt + 2.0);
      }
      PsiEval e = psi_eval(agents[i], st.lam.row(i));
      for (size_t k = 0; k < st.xavg[i].size(); ++k)
        st.xavg[i][k] = ((tt + 1.0) * st.xavg[i][k] + e.x[k]) / (tt + 2.0);
      for (int c = 0; c < m; ++c) grads.at(i, c) = e.subgrad[c];
      st.grad_max = std::max(st.grad_max, l2_norm(e.subgrad));
    }
    tracking_step(st.tracker, p, grads);

    std::fill(hsum.begin(), hsum.end(), 0.0);
    double fsum = 0.0;
    for (int i = 0; i < n; ++i) {
      auto hi = agents[i].h(st.xavg[i]);
      for (int c = 0; c < m; ++c) hsum[c] += hi[c];
      fsum += agents[i].f(st.xavg[i]);
    }
    double pen = 0.0;
    for (int c = 0; c < m; ++c) {
      double v = std::max(0.0, hsum[c]);
      pen += v * v;
    }
    tr.penalty.push_back(pen);
    tr.primal_value.push_back(fsum);

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
      tr.lam.push_back(st.lam);
      tr.lam_hat.push_back(st.lam_hat);
      tr.xavg.push_back(st.xavg);
      tr.z.push_back(st.tracker.z);
      tr.gsum.push_back(gsum);
    }
  }
  tr.grad_max = st.grad_max;
  return tr;
}

ConsensusStepsize ConsensusStepsize::decaying(double a0) {
  if (!(a0 > 0.0)) throw ConfigError("consensus baseline: a0 must be positive");
  return {Kind::decaying, a0, 0.0};
}

ConsensusStepsize ConsensusStepsize::constant(double alpha) {
  if (!(alpha >= 0.0)) throw ConfigError("consensus baseline: alpha must be nonnegative");
  return {Kind::constant, 1.0, alpha};
}

double ConsensusStepsize::at(long t) const {
  return kind == Kind::decaying ? a0 / static_cast<double>(t + 1) : alpha;
}

DualTrace run_consensus_dual_subgrad(const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
                                     const ConsensusStepsize& step, const Mat& lam0, long rounds,
                                     const std::vector<long>& record_at) {
  if (rounds < 1) throw ConfigError("consensus baseline: round count must be >= 1");
  check_record_at(rounds, record_at);
  const int n = static_cast<int>(agents.size());
  if (n < 1) throw ConfigError("consensus baseline: need at least one agent");
  const int m = agents[0].m;
  if (p.n != n) throw ConfigError("consensus baseline: weight matrix size mismatch");
  if (lam0.rows != n || lam0.cols != m) throw ConfigError("consensus baseline: lam0 shape mismatch");
  check_doubly_stochastic(p);

  Mat lam = lam0;
  std::vector<std::vector<double>> xavg(n);
  double grad_max = 0.0;
  Mat grads(n, m);
  for (int i = 0; i < n; ++i) {
    PsiEval e = psi_eval(agents[i], lam.row(i));
    xavg[i] = e.x;
    for (int c = 0; c < m; ++c) grads.at(i, c) = e.subgrad[c];
    grad_max = std::max(grad_max, l2_norm(e.subgrad));
  }

  DualTrace tr;
  tr.n = n;
  tr.m = m;
  Mat mixed(n, m);
  std::vector<double> hsum(m);
  size_t next_rec = 0;
  for (long t = 1; t <= rounds; ++t) {
    const double alpha = step.at(t - 1);
    for (int i = 0; i < n; ++i) {
      double* out = &mixed.a[static_cast<size_t>(i) * m];
      const double wii = p.at(i, i);
      for (int c = 0; c < m; ++c) out[c] = wii * lam.at(i, c);
      for (int j : p.nbrs[i]) {
        const double wij = p.at(i, j);
        for (int c = 0; c < m; ++c) out[c] += wij * lam.at(j, c);
      }
      for (int c = 0; c < m; ++c) out[c] = std::max(0.0, out[c] - alpha * grads.at(i, c));
    }
    lam = mixed;

    const double tt = static_cast<double>(t - 1);
    for (int i = 0; i < n; ++i) {
      PsiEval e = psi_eval(agents[i], lam.row(i));
      for (size_t k = 0; k < xavg[i].size(); ++k)
        xavg[i][k] = ((tt + 1.0) * xavg[i][k] + e.x[k]) / (tt + 2.0);
      for (int c = 0; c < m; ++c) grads.at(i, c) = e.subgrad[c];
      grad_max = std::max(grad_max, l2_norm(e.subgrad));
    }

    std::fill(hsum.begin(), hsum.end(), 0.0);
    double fsum = 0.0;
    for (int i = 0; i < n; ++i) {
      auto hi = agents[i].h(xavg[i]);
      for (int c = 0; c < m; ++c) hsum[c] += hi[c];
      fsum += agents[i].f(xavg[i]);
    }
    double pen = 0.0;
    for (int c = 0; c < m; ++c) {
      double v = std::max(0.0, hsum[c]);
      pen += v * v;
    }
    tr.penalty.push_back(pen);
    tr.primal_value.push_back(fsum);

    bool rec = record_at.empty();
    if (!rec && next_rec < record_at.size() && record_at[next_rec] == t) {
      rec = true;
      ++next_rec;
    }
    if (rec) {
      tr.t.push_back(t);
      tr.lam.push_back(lam);
      tr.lam_hat.push_back(lam);
      tr.xavg.push_back(xavg);
      tr.z.push_back(Mat(n, m));  // no accumulator in this method
      tr.gsum.push_back(std::vector<double>(m, 0.0));
    }
  }
  tr.grad_max = grad_max;
  return tr;
}

}  // namespace dsa2
