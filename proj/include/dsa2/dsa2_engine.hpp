#pragma once

#include <vector>

#include "dsa2/convex_kernel.hpp"
#include "dsa2/tracking.hpp"
#include "dsa2/topology.hpp"
#include "dsa2/vec.hpp"

namespace dsa2 {

// Prox stepsize sequence gamma_t. Either the gamma0*sqrt(t+1) rule the
// convergence bounds assume, or an explicit positive non-decreasing table.
// at(-1) is defined as at(0).
struct GammaSchedule {
  double gamma0 = 0.0;
  std::vector<double> table;  // empty means the sqrt rule

  static GammaSchedule sqrt_rule(double gamma0);
  static GammaSchedule from_table(std::vector<double> values);

  double at(long t) const;
};

// Per-network state of the distributed double-averaging method. Row i of x
// holds agent i's running average x_{i,t}, row i of x_hat the latest prox
// point; the tracker carries s, the accumulated z, and the last gradients.
struct Dsa2State {
  long t = 0;
  Mat x;
  Mat x_hat;
  TrackerState tracker;
};

// x_{i,0} = x_hat_{i,0} = x0 row i; tracker starts from the subgradients at
// x0. x0 rows must be feasible.
Dsa2State dsa2_init(const std::vector<LocalObjective>& fs, const ProxSetup& setup, const Mat& x0);

// One synchronous round from t to t+1:
//   x_hat_{i,t+1} = prox_map(z_{i,t}, gamma_t)
//   x_{i,t+1}     = ((t+1) x_{i,t} + x_hat_{i,t+1}) / (t+2)
//   tracker step with the subgradients at x_{i,t+1}
void dsa2_round(Dsa2State& st, const std::vector<LocalObjective>& fs, const ProxSetup& setup,
                const WeightMatrix& p, const GammaSchedule& sched);

// States recorded after selected rounds. Entry r describes the network at
// t[r] (1-based round counter); gsum[r] is sum_{k<=t[r]} of the true average
// gradient, kept so tracking deviation can be measured later.
struct PrimalTrace {
  int n = 0, m = 0;
  std::vector<long> t;
  std::vector<Mat> x;
  std::vector<Mat> x_hat;
  std::vector<Mat> z;
  std::vector<std::vector<double>> gsum;
};

// Recording plans are strictly ascending 1-based rounds within [1, rounds];
// anything else is a ConfigError. Shared by every trace-producing runner.
void check_record_at(long rounds, const std::vector<long>& record_at);

// Runs `rounds` synchronous rounds, recording after each round listed in
// record_at (ascending, 1-based; empty records every round). The trace never
// includes the t=0 initial state.
PrimalTrace run_dsa2(const std::vector<LocalObjective>& fs, const ProxSetup& setup,
                     const WeightMatrix& p, const GammaSchedule& sched, const Mat& x0, long rounds,
                     const std::vector<long>& record_at = {});

// Stepsize scale minimizing the convergence bound:
// (L/R) * sqrt(6 sqrt(n)/(1 - sigma2) + 13).
double optimal_gamma(double lip, double radius, int n, double sigma2);

}  // namespace dsa2
