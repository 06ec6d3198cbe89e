#pragma once

#include "dsa2/topology.hpp"
#include "dsa2/vec.hpp"

namespace dsa2 {

// Dynamic average consensus over subgradients. Row i of each matrix belongs
// to agent i:
//   s: current tracking signals s_{i,t}
//   z: accumulated signals sum_{k<=t} s_{i,k} (what the prox step consumes)
//   last_grad: the gradients the signals were last corrected with
// Invariant (conservation): mean_i s_{i,t} equals mean_i last_grad_{i,t}
// exactly in real arithmetic whenever s was initialized from the gradients.
struct TrackerState {
  Mat s, z, last_grad;
};

// s_{i,0} = z_{i,0} = grads0 row i.
TrackerState init_tracking(const Mat& grads0);

// s_{i,t+1} = sum_{j in N_i u {i}} p_ij s_{j,t} + g_i^new - g_i^old, then
// z += s. The mix runs over the sparse neighbor lists only (diagonal first,
// then ascending neighbors); the correction is added as
// (mix - old) + new, which keeps the n=1 tracker bitwise exact.
void tracking_step(TrackerState& st, const WeightMatrix& p, const Mat& new_grads);

}  // namespace dsa2
