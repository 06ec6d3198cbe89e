#include "dsa2/dual_decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "dsa2/errors.hpp"

namespace dsa2 {

PsiEval psi_eval(const CoupledAgentSpec& agent, std::span<const double> lambda) {
  if (static_cast<int>(lambda.size()) != agent.m) throw ConfigError("psi_eval: multiplier dimension mismatch");
  PsiEval out;
  out.x = agent.inner_argmax(lambda);
  auto hx = agent.h(out.x);
  if (static_cast<int>(hx.size()) != agent.m) throw ConfigError("psi_eval: constraint dimension mismatch");
  out.value = -agent.f(out.x) - dot(lambda, hx);
  out.subgrad.resize(hx.size());
  for (size_t k = 0; k < hx.size(); ++k) out.subgrad[k] = -hx[k];
  return out;
}

DualState dd_init(const std::vector<CoupledAgentSpec>& agents, const Mat& lam0) {
  const int n = static_cast<int>(agents.size());
  if (n < 1) throw ConfigError("dual decomposition: need at least one agent");
  const int m = agents[0].m;
  for (auto& a : agents)
    if (a.m != m) throw ConfigError("dual decomposition: agents disagree on constraint dimension");
  if (lam0.rows != n || lam0.cols != m) throw ConfigError("dual decomposition: lam0 shape mismatch");
  for (double v : lam0.a)
    if (v < 0.0) throw ConfigError("dual decomposition: multipliers must be nonnegative");

  DualState st;
  st.t = 0;
  st.lam = lam0;
  st.lam_hat = lam0;
  st.xavg.resize(n);
  Mat g0(n, m);
  for (int i = 0; i < n; ++i) {
    PsiEval e = psi_eval(agents[i], lam0.row(i));
    st.xavg[i] = e.x;
    for (int c = 0; c < m; ++c) g0.at(i, c) = e.subgrad[c];
    st.grad_max = std::max(st.grad_max, l2_norm(e.subgrad));
  }
  st.tracker = init_tracking(g0);
  return st;
}

void dd_round(DualState& st, const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
              const GammaSchedule& sched) {
  const int n = st.lam.rows, m = st.lam.cols;
  const double gamma = sched.at(st.t);
  const double tt = static_cast<double>(st.t);

  Mat grads(n, m);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < m; ++c) {
      double hat = std::max(0.0, -st.tracker.z.at(i, c) / gamma);
      st.lam_hat.at(i, c) = hat;
      st.lam.at(i, c) = ((tt + 1.0) * st.lam.at(i, c) + hat) / (tt + 2.0);
    }
    PsiEval e = psi_eval(agents[i], st.lam.row(i));
    for (size_t k = 0; k < st.xavg[i].size(); ++k)
      st.xavg[i][k] = ((tt + 1.0) * st.xavg[i][k] + e.x[k]) / (tt + 2.0);
    for (int c = 0; c < m; ++c) grads.at(i, c) = e.subgrad[c];
    st.grad_max = std::max(st.grad_max, l2_norm(e.subgrad));
  }
  tracking_step(st.tracker, p, grads);
  ++st.t;
}

DualTrace run_dual_decomp(const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
                          const GammaSchedule& sched, const Mat& lam0, long rounds,
                          const std::vector<long>& record_at) {
  if (rounds < 1) throw ConfigError("run_dual_decomp: round count must be >= 1");
  check_record_at(rounds, record_at);
  const int n = static_cast<int>(agents.size());
  if (p.n != n) throw ConfigError("run_dual_decomp: weight matrix size mismatch");
  check_doubly_stochastic(p);

  DualState st = dd_init(agents, lam0);
  const int m = st.lam.cols;

  DualTrace tr;
  tr.n = n;
  tr.m = m;
  tr.penalty.reserve(rounds);
  tr.primal_value.reserve(rounds);

  std::vector<double> gsum(m);
  for (int c = 0; c < m; ++c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += st.tracker.last_grad.at(i, c);
    gsum[c] = s / n;
  }

  std::vector<double> hsum(m);
  size_t next_rec = 0;
  for (long t = 1; t <= rounds; ++t) {
    dd_round(st, agents, p, sched);

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

double log_utility_inner_argmax(double c, double d, double lambda) {
  if (!(c > 0.0) || !(d > 0.0)) throw ConfigError("log utility agent: requires c > 0 and d > 0");
  double x = lambda * d / c - 1.0;
  return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

CoupledAgentSpec make_log_utility_agent(double c, double d, double b_share) {
  if (!(c > 0.0) || !(d > 0.0)) throw ConfigError("log utility agent: requires c > 0 and d > 0");
  CoupledAgentSpec a;
  a.m = 1;
  a.set = FeasibleSet::box({0.0}, {1.0});
  a.f = [c](std::span<const double> x) { return c * x[0]; };
  a.h = [d, b_share](std::span<const double> x) {
    return std::vector<double>{b_share - d * std::log1p(x[0])};
  };
  a.inner_argmax = [c, d](std::span<const double> lam) {
    return std::vector<double>{log_utility_inner_argmax(c, d, lam[0])};
  };
  return a;
}

std::vector<double> golden_section_argmax(const CoupledAgentSpec& agent, std::span<const double> lambda) {
  if (agent.set.kind != FeasibleSet::Kind::box || agent.set.dim != 1)
    throw ConfigError("golden_section_argmax: needs a one-dimensional box");
  auto phi = [&](double x) {
    std::vector<double> xv{x};
    auto hx = agent.h(xv);
    return -agent.f(xv) - dot(lambda, hx);
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = agent.set.lo[0], b = agent.set.hi[0];
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = phi(c), fd = phi(d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = phi(d);
    }
  }
  return {0.5 * (a + b)};
}

}  // namespace dsa2
