#include "dsa2/metrics_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsa2/errors.hpp"
#include "dsa2/vec.hpp"

namespace dsa2 {

namespace {

void check_network(int n, double sig2) {
  if (n < 1) throw ConfigError("bounds: n must be >= 1");
  if (!(sig2 >= 0.0) || !(sig2 < 1.0)) throw ConfigError("bounds: sigma2 must lie in [0, 1)");
}

}  // namespace

double objective_error_bound(long t, const BoundParams& p) {
  check_network(p.n, p.sig2);
  if (!(p.gamma > 0.0)) throw ConfigError("bounds: gamma must be positive");
  if (t < 0) throw ConfigError("bounds: t must be >= 0");
  double l2 = p.lip * p.lip;
  double network = 6.0 * l2 * std::sqrt(static_cast<double>(p.n)) / (1.0 - p.sig2) + 13.0 * l2;
  return (network / p.gamma + p.gamma * p.radius2) / std::sqrt(static_cast<double>(t + 1));
}

double disagreement_bound(const BoundParams& p) {
  check_network(p.n, p.sig2);
  return std::sqrt(static_cast<double>(p.n)) * p.lip / (1.0 - p.sig2) + 2.0 * p.lip;
}

DualBounds dual_bounds(long t, const DualBoundParams& p) {
  check_network(p.n, p.sig2);
  if (!(p.gamma > 0.0)) throw ConfigError("bounds: gamma must be positive");
  if (t < 0) throw ConfigError("bounds: t must be >= 0");
  double rt = std::sqrt(static_cast<double>(t + 1));
  double nn = static_cast<double>(p.n);
  double sn = std::sqrt(nn) / (1.0 - p.sig2);

  DualBounds b;
  b.dual_error = 2.0 * nn * (3.0 * sn + 6.5) * p.grad_bound2 / (p.gamma * rt) +
                 p.gamma * p.lambda_star_norm * p.lambda_star_norm / (2.0 * rt);
  b.penalty = 4.0 * nn * (sn + 2.5) * p.grad_bound2 / static_cast<double>(t + 1) + 2.0 * p.gamma * p.gap / rt;
  b.primal_hi = 2.0 * nn * (sn + 2.5) * p.grad_bound2 / (p.gamma * rt);
  b.primal_lo = -p.lambda_star_norm * std::sqrt(b.penalty);
  return b;
}

PrimalMetrics measure_metrics(const PrimalTrace& tr, const std::vector<LocalObjective>& fs, NormPair np,
                              const GroundTruth* truth) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int n = tr.n;
  PrimalMetrics m;
  m.objective.resize(tr.t.size());
  m.obj_err.resize(tr.t.size());
  m.diameter.resize(tr.t.size());
  m.track_dev.resize(tr.t.size());

  std::vector<double> diff(tr.m);
  for (size_t r = 0; r < tr.t.size(); ++r) {
    const Mat& x = tr.x[r];
    m.objective[r].resize(n);
    m.obj_err[r].resize(n);
    m.track_dev[r].resize(n);
    for (int i = 0; i < n; ++i) {
      double f = 0.0;
      for (int j = 0; j < n; ++j) f += fs[j].value(x.row(i));
      f /= n;
      m.objective[r][i] = f;
      m.obj_err[r][i] = truth ? f - truth->f_star : nan;
      for (int c = 0; c < tr.m; ++c) diff[c] = tr.z[r].at(i, c) - tr.gsum[r][c];
      m.track_dev[r][i] = dual_norm(np, diff);
    }
    double dia = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        for (int c = 0; c < tr.m; ++c) diff[c] = x.at(i, c) - x.at(j, c);
        dia = std::max(dia, primal_norm(np, diff));
      }
    m.diameter[r] = dia;
  }
  return m;
}

DualMetrics measure_dual_metrics(const DualTrace& tr, const std::vector<CoupledAgentSpec>& agents,
                                 const CoupledTruth* truth) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int n = tr.n;
  DualMetrics m;
  m.dual_value.resize(tr.t.size());
  m.dual_err.resize(tr.t.size());
  m.diameter.resize(tr.t.size());
  m.track_dev.resize(tr.t.size());

  double psi_at_star = nan;
  if (truth) {
    std::vector<double> ls(tr.m, 0.0);
    ls[0] = truth->lambda_star;  // scalar-coupled family
    psi_at_star = 0.0;
    for (int j = 0; j < n; ++j) psi_at_star += psi_eval(agents[j], ls).value;
  }

  std::vector<double> diff(tr.m);
  for (size_t r = 0; r < tr.t.size(); ++r) {
    const Mat& lam = tr.lam[r];
    m.dual_value[r].resize(n);
    m.dual_err[r].resize(n);
    m.track_dev[r].resize(n);
    for (int i = 0; i < n; ++i) {
      double q = 0.0;
      for (int j = 0; j < n; ++j) q += psi_eval(agents[j], lam.row(i)).value;
      m.dual_value[r][i] = q;
      m.dual_err[r][i] = truth ? q - psi_at_star : nan;
      for (int c = 0; c < tr.m; ++c) diff[c] = tr.z[r].at(i, c) - tr.gsum[r][c];
      m.track_dev[r][i] = l2_norm(diff);
    }
    double dia = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        for (int c = 0; c < tr.m; ++c) diff[c] = lam.at(i, c) - lam.at(j, c);
        dia = std::max(dia, l2_norm(diff));
      }
    m.diameter[r] = dia;
  }

  m.penalty = tr.penalty;
  m.primal_err.resize(tr.primal_value.size());
  for (size_t r = 0; r < tr.primal_value.size(); ++r)
    m.primal_err[r] = truth ? tr.primal_value[r] - truth->f_star : nan;
  return m;
}

double duality_gap_constant(const std::vector<CoupledAgentSpec>& agents, double f_star) {
  double c = f_star;
  for (auto& a : agents) {
    std::vector<double> zero(a.m, 0.0);
    c += psi_eval(a, zero).value;
  }
  return c;
}

}  // namespace dsa2
