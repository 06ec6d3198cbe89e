#include "dsa2/reference_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsa2/dual_decomposition.hpp"
#include "dsa2/errors.hpp"
#include "dsa2/vec.hpp"

namespace dsa2 {

std::vector<std::vector<double>> centralized_sa2(const LocalObjective& objective, const ProxSetup& setup,
                                                 const GammaSchedule& sched, std::span<const double> x0,
                                                 long rounds) {
  if (rounds < 1) throw ConfigError("centralized_sa2: round count must be >= 1");
  const int m = setup.set.dim;
  if (static_cast<int>(x0.size()) != m) throw ConfigError("centralized_sa2: x0 dimension mismatch");
  if (!setup.set.contains(x0, 1e-9)) throw ConfigError("centralized_sa2: infeasible initial point");

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> acc = objective.subgrad(x);
  if (static_cast<int>(acc.size()) != m) throw ConfigError("centralized_sa2: subgradient dimension mismatch");

  std::vector<std::vector<double>> traj;
  traj.reserve(rounds);
  for (long t = 0; t < rounds; ++t) {
    const double gamma = sched.at(t);
    const double tt = static_cast<double>(t);
    std::vector<double> xh = prox_map(acc, gamma, setup);
    for (int c = 0; c < m; ++c) x[c] = ((tt + 1.0) * x[c] + xh[c]) / (tt + 2.0);
    std::vector<double> g = objective.subgrad(x);
    for (int c = 0; c < m; ++c) acc[c] += g[c];
    traj.push_back(x);
  }
  return traj;
}

namespace {

// Multiples of res inside [lo, hi], with the endpoints appended exactly.
std::vector<double> lattice(double lo, double hi, double res) {
  std::vector<double> v;
  v.push_back(lo);
  long k_lo = static_cast<long>(std::ceil(lo / res - 1e-9));
  long k_hi = static_cast<long>(std::floor(hi / res + 1e-9));
  for (long k = k_lo; k <= k_hi; ++k) {
    double x = static_cast<double>(k) * res;
    if (x > lo && x < hi) v.push_back(x);
  }
  if (hi > lo) v.push_back(hi);
  return v;
}

}  // namespace

GroundTruth brute_force_min(const std::function<double(std::span<const double>)>& objective,
                            const FeasibleSet& set, double resolution) {
  if (!(resolution > 0.0)) throw ConfigError("brute_force_min: resolution must be positive");
  if (set.dim > 2) throw ConfigError("brute_force_min: supports dimension <= 2 only");
  if (set.kind != FeasibleSet::Kind::box && set.kind != FeasibleSet::Kind::l2_ball)
    throw ConfigError("brute_force_min: supports box and l2_ball sets only");

  const bool ball = set.kind == FeasibleSet::Kind::l2_ball;
  std::vector<std::vector<double>> axes;
  for (int i = 0; i < set.dim; ++i) {
    double lo = ball ? -set.radius : set.lo[i];
    double hi = ball ? set.radius : set.hi[i];
    axes.push_back(lattice(lo, hi, resolution));
    if (axes.back().size() > 400000000ULL / (axes.size() > 1 ? axes[0].size() : 1))
      throw NumericError("brute_force_min: grid too large at this resolution");
  }

  GroundTruth best;
  best.f_star = std::numeric_limits<double>::infinity();
  double pt[2];
  if (set.dim == 1) {
    for (double x : axes[0]) {
      if (ball && std::fabs(x) > set.radius) continue;
      pt[0] = x;
      double f = objective(std::span<const double>(pt, 1));
      if (f < best.f_star) {
        best.f_star = f;
        best.x_star = {x};
      }
    }
  } else {
    const double r2 = set.radius * set.radius;
    for (double x1 : axes[0]) {
      pt[0] = x1;
      for (double x2 : axes[1]) {
        if (ball && x1 * x1 + x2 * x2 > r2) continue;
        pt[1] = x2;
        double f = objective(std::span<const double>(pt, 2));
        if (f < best.f_star) {
          best.f_star = f;
          best.x_star = {x1, x2};
        }
      }
    }
  }
  if (!std::isfinite(best.f_star)) throw NumericError("brute_force_min: no feasible grid point");
  best.kkt_residual = 0.0;
  return best;
}

namespace {

void check_family(std::span<const double> c, std::span<const double> d) {
  if (c.empty() || c.size() != d.size())
    throw ConfigError("coupled family: c and d must have equal nonzero length");
  for (size_t i = 0; i < c.size(); ++i)
    if (!(c[i] > 0.0) || !(d[i] > 0.0)) throw ConfigError("coupled family: requires c > 0 and d > 0");
}

double aggregate_violation(std::span<const double> c, std::span<const double> d, double b, double lambda) {
  double s = b;
  for (size_t i = 0; i < c.size(); ++i) s -= d[i] * std::log1p(log_utility_inner_argmax(c[i], d[i], lambda));
  return s;
}

}  // namespace

CoupledTruth solve_example_dual_bisection(std::span<const double> c, std::span<const double> d, double b) {
  check_family(c, d);
  const size_t n = c.size();
  double cap = 0.0;
  for (size_t i = 0; i < n; ++i) cap += d[i] * std::log(2.0);
  if (b > cap) throw InfeasibleError("coupled family: infeasible, even x = 1 misses the budget");

  double lam = 0.0;
  if (aggregate_violation(c, d, b, 0.0) > 0.0) {
    double hi = 1.0;
    int guard = 0;
    while (aggregate_violation(c, d, b, hi) > 0.0) {
      hi *= 2.0;
      if (++guard > 200) throw NumericError("dual bisection: bracketing failed");
    }
    double lo = hi > 1.0 ? hi / 2.0 : 0.0;
    lam = hi;
    while (hi - lo > 1e-12) {
      double mid = 0.5 * (lo + hi);
      double g = aggregate_violation(c, d, b, mid);
      if (std::fabs(g) <= 1e-10) {
        lam = mid;
        break;
      }
      if (g <= 0.0)
        hi = mid;
      else
        lo = mid;
      lam = hi;  // keep the feasible side
    }
  }

  CoupledTruth out;
  out.lambda_star = lam;
  out.x_star.resize(n);
  out.f_star = 0.0;
  for (size_t i = 0; i < n; ++i) {
    out.x_star[i] = log_utility_inner_argmax(c[i], d[i], lam);
    out.f_star += c[i] * out.x_star[i];
  }
  double g = aggregate_violation(c, d, b, lam);
  double res = std::max(0.0, g);            // primal feasibility
  res = std::max(res, std::fabs(lam * g));  // complementary slackness
  for (size_t i = 0; i < n; ++i) {          // stationarity per coordinate
    double x = out.x_star[i];
    if (x <= 0.0)
      res = std::max(res, std::max(0.0, lam * d[i] - c[i]));
    else if (x >= 1.0)
      res = std::max(res, std::max(0.0, c[i] - lam * d[i] / 2.0));
    else
      res = std::max(res, std::fabs(c[i] - lam * d[i] / (1.0 + x)));
  }
  out.kkt_residual = res;
  return out;
}

CoupledTruth solve_example_primal_enumeration(std::span<const double> c, std::span<const double> d, double b) {
  check_family(c, d);
  const int n = static_cast<int>(c.size());
  if (n > 12) throw ConfigError("primal enumeration: pattern count explodes past n = 12");

  CoupledTruth best;
  best.f_star = std::numeric_limits<double>::infinity();

  if (b <= 0.0) {
    // x = 0 is feasible and the costs are positive.
    best.x_star.assign(n, 0.0);
    best.f_star = 0.0;
    best.lambda_star = 0.0;
    best.kkt_residual = 0.0;
    return best;
  }

  long patterns = 1;
  for (int i = 0; i < n; ++i) patterns *= 3;

  std::vector<int> code(n);
  std::vector<double> x(n);
  for (long pat = 0; pat < patterns; ++pat) {
    long rem = pat;
    for (int i = 0; i < n; ++i) {
      code[i] = static_cast<int>(rem % 3);
      rem /= 3;
    }

    double fixed_budget = 0.0, fixed_cost = 0.0;
    double lam_lo = 0.0, lam_hi = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      if (code[i] == 0) {
        x[i] = 0.0;
      } else if (code[i] == 2) {
        x[i] = 1.0;
        fixed_budget += d[i] * std::log(2.0);
        fixed_cost += c[i];
      } else {
        // interior: x_i = lam d_i / c_i - 1 in (0,1) constrains lam
        lam_lo = std::max(lam_lo, c[i] / d[i]);
        lam_hi = std::min(lam_hi, 2.0 * c[i] / d[i]);
      }
    }
    if (lam_lo > lam_hi) continue;

    double target = b - fixed_budget;
    bool has_interior = false;
    for (int i = 0; i < n; ++i) has_interior = has_interior || code[i] == 1;

    double cand_f;
    if (!has_interior) {
      if (fixed_budget < b - 1e-12) continue;  // infeasible pattern
      cand_f = fixed_cost;
    } else {
      // sum_{interior} d_i log(lam d_i / c_i) is strictly increasing in lam;
      // bisect it against the remaining budget.
      auto interior_budget = [&](double lam) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          if (code[i] == 1) s += d[i] * std::log(lam * d[i] / c[i]);
        return s;
      };
      if (interior_budget(lam_lo) > target + 1e-12 || interior_budget(lam_hi) < target - 1e-12) continue;
      double lo = lam_lo, hi = lam_hi;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (interior_budget(mid) < target)
          lo = mid;
        else
          hi = mid;
      }
      double lam = 0.5 * (lo + hi);
      cand_f = fixed_cost;
      ok = true;
      for (int i = 0; i < n; ++i) {
        if (code[i] != 1) continue;
        x[i] = lam * d[i] / c[i] - 1.0;
        if (x[i] < -1e-9 || x[i] > 1.0 + 1e-9) {
          ok = false;
          break;
        }
        x[i] = std::clamp(x[i], 0.0, 1.0);
        cand_f += c[i] * x[i];
      }
      if (!ok) continue;
      if (cand_f < best.f_star) best.lambda_star = lam;
    }

    if (cand_f < best.f_star) {
      best.f_star = cand_f;
      best.x_star.assign(x.begin(), x.end());
      for (int i = 0; i < n; ++i)
        if (code[i] == 0) best.x_star[i] = 0.0;
    }
  }

  if (!std::isfinite(best.f_star)) throw InfeasibleError("primal enumeration: no feasible pattern");
  double got = 0.0;
  for (int i = 0; i < n; ++i) got += d[i] * std::log1p(best.x_star[i]);
  best.kkt_residual = std::max(0.0, b - got);
  return best;
}

double coupled_grid_min(std::span<const double> c, std::span<const double> d, double b, double resolution) {
  check_family(c, d);
  const int n = static_cast<int>(c.size());
  if (n > 2) throw ConfigError("coupled_grid_min: practical for n <= 2 only");
  std::vector<double> axis = lattice(0.0, 1.0, resolution);

  double best = std::numeric_limits<double>::infinity();
  if (n == 1) {
    for (double x : axis)
      if (d[0] * std::log1p(x) >= b) best = std::min(best, c[0] * x);
  } else {
    for (double x1 : axis) {
      double u1 = d[0] * std::log1p(x1);
      for (double x2 : axis)
        if (u1 + d[1] * std::log1p(x2) >= b) best = std::min(best, c[0] * x1 + c[1] * x2);
    }
  }
  if (!std::isfinite(best)) throw InfeasibleError("coupled_grid_min: no feasible grid point");
  return best;
}

}  // namespace dsa2
