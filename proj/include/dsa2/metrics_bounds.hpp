#pragma once

#include <vector>

#include "dsa2/convex_kernel.hpp"
#include "dsa2/dsa2_engine.hpp"
#include "dsa2/dual_decomposition.hpp"
#include "dsa2/reference_oracles.hpp"

namespace dsa2 {

// Inputs of the objective-error bound: common Lipschitz constant of the
// local objectives (dual norm), R^2 = max of the prox function over the set,
// network size, second-largest singular value of the mixing matrix, and the
// gamma_t = gamma sqrt(t+1) scale.
struct BoundParams {
  double lip = 0.0;
  double radius2 = 0.0;
  int n = 1;
  double sig2 = 0.0;
  double gamma = 0.0;
};

// Worst-agent objective error after t rounds:
// ((6 L^2 sqrt(n)/(1-sigma2) + 13 L^2)/gamma + gamma R^2) / sqrt(t+1).
double objective_error_bound(long t, const BoundParams& p);

// Uniform bound on the accumulated-tracking deviation
// ||z_{i,t} - sum_{k<=t} g_k||_*: sqrt(n) L / (1 - sigma2) + 2 L.
double disagreement_bound(const BoundParams& p);

// Inputs of the dual-decomposition bounds. grad_bound2 is D, the square of
// the largest dual-subgradient norm seen along the run; gap is
// C = sum_j f_j* - min_{x in X} sum_j f_j(x).
struct DualBoundParams {
  int n = 1;
  double sig2 = 0.0;
  double gamma = 0.0;
  double grad_bound2 = 0.0;
  double lambda_star_norm = 0.0;
  double gap = 0.0;
};

struct DualBounds {
  double dual_error = 0.0;  // sum_j psi_j(lam_{i,t}) - sum_j psi_j(lam*)
  double penalty = 0.0;     // || max(0, sum_j h_j(x_{j,t})) ||_2^2
  double primal_hi = 0.0;   // upper bound on sum_j f_j(x_{j,t}) - sum_j f_j*
  double primal_lo = 0.0;   // lower bound (negative): -||lam*|| sqrt(penalty bound)
};

DualBounds dual_bounds(long t, const DualBoundParams& p);

// Measured trajectories derived from a primal run. Entry [r][i] refers to
// recorded round r, agent i. objective holds the global objective
// (1/n) sum_j f_j at each agent's iterate; obj_err subtracts f_star when
// truth is given (NaN otherwise).
struct PrimalMetrics {
  std::vector<std::vector<double>> objective;
  std::vector<std::vector<double>> obj_err;
  std::vector<double> diameter;                // max pairwise primal-norm distance
  std::vector<std::vector<double>> track_dev;  // ||z_i - sum g_k||_*
};

PrimalMetrics measure_metrics(const PrimalTrace& tr, const std::vector<LocalObjective>& fs, NormPair np,
                              const GroundTruth* truth);

// Same idea for dual runs. dual_value[r][i] = sum_j psi_j(lam_{i,t_r});
// dual_err subtracts sum_j psi_j(lam*). penalty / primal_err are
// full-resolution (one entry per round), primal_err = primal_value - f_star.
struct DualMetrics {
  std::vector<std::vector<double>> dual_value;
  std::vector<std::vector<double>> dual_err;
  std::vector<double> diameter;
  std::vector<std::vector<double>> track_dev;
  std::vector<double> penalty;
  std::vector<double> primal_err;
};

DualMetrics measure_dual_metrics(const DualTrace& tr, const std::vector<CoupledAgentSpec>& agents,
                                 const CoupledTruth* truth);

// C = sum_j f_j* - min_x sum_j f_j = f_star + sum_j psi_j(0), using that the
// feasible set is a product and psi_j(0) = -min f_j.
double duality_gap_constant(const std::vector<CoupledAgentSpec>& agents, double f_star);

}  // namespace dsa2
