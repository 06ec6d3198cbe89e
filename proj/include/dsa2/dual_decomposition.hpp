#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dsa2/convex_kernel.hpp"
#include "dsa2/dsa2_engine.hpp"
#include "dsa2/tracking.hpp"
#include "dsa2/topology.hpp"
#include "dsa2/vec.hpp"

namespace dsa2 {

// One agent of a constraint-coupled problem
//   min sum_i f_i(x_i)  s.t.  sum_i h_i(x_i) <= 0,  x_i in X_i,
// where h_i maps X_i into R^m and each agent's share of the coupling budget
// is folded into its own h_i. inner_argmax(lambda) must return a maximizer
// of -f_i(x) - <lambda, h_i(x)> over X_i.
struct CoupledAgentSpec {
  std::function<double(std::span<const double>)> f;
  std::function<std::vector<double>(std::span<const double>)> h;
  std::function<std::vector<double>(std::span<const double>)> inner_argmax;
  FeasibleSet set;  // X_i
  int m = 0;        // coupling constraint dimension
};

// Dual function value, a subgradient (Danskin: -h_i at the inner maximizer),
// and the maximizer itself.
struct PsiEval {
  double value = 0.0;
  std::vector<double> subgrad;
  std::vector<double> x;
};

PsiEval psi_eval(const CoupledAgentSpec& agent, std::span<const double> lambda);

// Network state for the dual double-averaging method. lam rows are the
// running-average multipliers lambda_{i,t}; xavg[i] is agent i's running
// average of inner maximizers (the recovered primal iterate).
struct DualState {
  long t = 0;
  Mat lam;
  Mat lam_hat;
  std::vector<std::vector<double>> xavg;
  TrackerState tracker;
  double grad_max = 0.0;  // max_k max_j ||grad psi_j(lambda_{j,k})||_2 so far
};

DualState dd_init(const std::vector<CoupledAgentSpec>& agents, const Mat& lam0);

// One synchronous round:
//   lam_hat_{i,t+1} = max(0, -z_{i,t}/gamma_t)
//   lam_{i,t+1}     = ((t+1) lam_{i,t} + lam_hat_{i,t+1}) / (t+2)
//   x_i(lam_{i,t+1}) from inner_argmax, folded into xavg
//   tracker step with -h_i(x_i(lam_{i,t+1}))
void dd_round(DualState& st, const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
              const GammaSchedule& sched);

struct DualTrace {
  int n = 0, m = 0;
  // Full-resolution aggregates, entry r for round t = r+1:
  std::vector<double> penalty;       // ||max(0, sum_j h_j(xavg_{j,t}))||_2^2
  std::vector<double> primal_value;  // sum_j f_j(xavg_{j,t})
  // Snapshots at recorded rounds:
  std::vector<long> t;
  std::vector<Mat> lam;
  std::vector<Mat> lam_hat;
  std::vector<std::vector<std::vector<double>>> xavg;
  std::vector<Mat> z;
  std::vector<std::vector<double>> gsum;  // sum_{k<=t} of mean grad psi
  double grad_max = 0.0;
};

// record_at as in run_dsa2 (ascending 1-based rounds, empty = all). The
// penalty / primal_value series always cover every round.
DualTrace run_dual_decomp(const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
                          const GammaSchedule& sched, const Mat& lam0, long rounds,
                          const std::vector<long>& record_at = {});

// Scalar family behind the shipped experiments: f_i(x) = c x on [0, 1],
// h_i(x) = b_share - d log(1 + x). Closed-form inner maximizer
// clamp(lambda d / c - 1, 0, 1). Requires c > 0, d > 0.
CoupledAgentSpec make_log_utility_agent(double c, double d, double b_share);

double log_utility_inner_argmax(double c, double d, double lambda);

// Derivative-free fallback for scalar X_i: golden-section search for the
// inner maximizer of -f(x) - <lambda, h(x)> over a 1-D box, interval
// tolerance 1e-12. Assumes the maximand is unimodal (true when f and the
// components of h are convex and lambda >= 0).
std::vector<double> golden_section_argmax(const CoupledAgentSpec& agent, std::span<const double> lambda);

}  // namespace dsa2
