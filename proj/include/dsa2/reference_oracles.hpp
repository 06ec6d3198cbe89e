#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dsa2/convex_kernel.hpp"
#include "dsa2/dsa2_engine.hpp"

namespace dsa2 {

// Single-machine double-averaging reference: same update rule as the
// distributed engine with the network collapsed to one node, implemented
// independently (own accumulator, no tracker) so the n=1 reduction test
// compares two code paths. Returns x_t for t = 1..rounds.
std::vector<std::vector<double>> centralized_sa2(const LocalObjective& objective, const ProxSetup& setup,
                                                 const GammaSchedule& sched, std::span<const double> x0,
                                                 long rounds);

struct GroundTruth {
  std::vector<double> x_star;
  double f_star = 0.0;
  double kkt_residual = 0.0;
};

// Exhaustive lattice minimization over a box or l2 ball in dimension <= 2.
// The lattice is the integer multiples of `resolution` intersected with the
// set, plus box endpoints, so it contains 0 whenever the set does. First
// minimum in scan order wins. f_star overshoots the true minimum by at most
// Lip * resolution * sqrt(dim).
GroundTruth brute_force_min(const std::function<double(std::span<const double>)>& objective,
                            const FeasibleSet& set, double resolution);

// Ground truth for the coupled scalar family
//   min sum c_i x_i  s.t.  sum d_i log(1+x_i) >= b,  x in [0,1]^n.
struct CoupledTruth {
  std::vector<double> x_star;
  double f_star = 0.0;
  double lambda_star = 0.0;
  double kkt_residual = 0.0;
};

// Dual route: the aggregate constraint value at the inner maximizers,
// g(lambda) = b - sum d_i log(1 + x_i(lambda)), is non-increasing in lambda;
// bisection runs to |g| <= 1e-10 or an interval of 1e-12 after bracketing by
// doubling. Requires c, d > 0; throws InfeasibleError when even x = 1 cannot
// reach b (sum d_i log 2 < b). kkt_residual collects stationarity,
// complementarity, and feasibility defects (accepted solutions stay <= 1e-8).
CoupledTruth solve_example_dual_bisection(std::span<const double> c, std::span<const double> d, double b);

// Primal route, implementation-independent from the bisection: exhaustively
// enumerates the 3^n clamp patterns (each coordinate at 0, interior, or 1),
// solves the 1-D equal-slope stationarity equation per pattern, filters by
// feasibility, and returns the best candidate. Exact to root-solve precision
// (~1e-10); intended as the cross-check oracle for n <= 5.
CoupledTruth solve_example_primal_enumeration(std::span<const double> c, std::span<const double> d, double b);

// Feasibility-filtered coordinate grid for the same family; practical only
// for n <= 2. Returns the best feasible lattice point's objective value.
double coupled_grid_min(std::span<const double> c, std::span<const double> d, double b, double resolution);

}  // namespace dsa2
