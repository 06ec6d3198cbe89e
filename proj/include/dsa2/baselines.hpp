#pragma once

#include <vector>

#include "dsa2/convex_kernel.hpp"
#include "dsa2/dsa2_engine.hpp"
#include "dsa2/dual_decomposition.hpp"

namespace dsa2 {

// Distributed dual averaging: identical to the double-averaging engine
// except the tracker is corrected with subgradients taken at the prox
// points x_hat instead of the running averages. Kept as the ablation that
// shows where the second averaging matters.
PrimalTrace run_dda(const std::vector<LocalObjective>& fs, const ProxSetup& setup, const WeightMatrix& p,
                    const GammaSchedule& sched, const Mat& x0, long rounds,
                    const std::vector<long>& record_at = {});

// Same ablation on the dual of a coupled problem. The trace's lam rows hold
// the prox points lam_hat (where subgradients are evaluated); lam_hat rows
// hold their running average; the recovered primal is the running average of
// inner maximizers at lam_hat.
DualTrace run_dda_dual(const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
                       const GammaSchedule& sched, const Mat& lam0, long rounds,
                       const std::vector<long>& record_at = {});

// Consensus-based projected dual subgradient iteration
//   lam_{i,t+1} = max(0, sum_j p_ij lam_{j,t} - alpha_t grad psi_i(lam_{i,t}))
// with alpha_t = a0/(t+1) (decaying) or a constant alpha. The recovered
// primal is the running average of inner maximizers at lam_{i,t}.
struct ConsensusStepsize {
  enum class Kind { decaying, constant };
  Kind kind = Kind::decaying;
  double a0 = 10.0;     // decaying: alpha_t = a0/(t+1); requires a0 > 0
  double alpha = 0.05;  // constant: requires alpha >= 0 (0 = pure consensus)

  static ConsensusStepsize decaying(double a0);
  static ConsensusStepsize constant(double alpha);
  double at(long t) const;
};

DualTrace run_consensus_dual_subgrad(const std::vector<CoupledAgentSpec>& agents, const WeightMatrix& p,
                                     const ConsensusStepsize& step, const Mat& lam0, long rounds,
                                     const std::vector<long>& record_at = {});

}  // namespace dsa2
