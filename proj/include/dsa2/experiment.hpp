#pragma once

// Experiment orchestration: takes a validated RunConfig, runs the pipeline
// it names, and leaves trace.csv, meta.json, topology.txt, and SVG plots in
// the output directory.

#include <limits>
#include <string>
#include <vector>

#include "dsa2/config.hpp"

namespace dsa2 {

struct ExperimentResult {
  std::string out_dir;
  std::vector<std::string> artifacts;
  double sigma2 = 0.0;
  double wall_seconds = 0.0;
  long rounds_run = 0;  // smaller than the budget only when stop_tol fires

  // Measured bound checks for dual runs of the double-averaging method;
  // meaningful only when dual_checks_apply.
  bool dual_checks_apply = false;
  bool penalty_below_bound = false;
  bool primal_sandwich_holds = false;
  bool dual_error_below_bound = false;
  double penalty_at_100 = std::numeric_limits<double>::quiet_NaN();
  double penalty_at_final = std::numeric_limits<double>::quiet_NaN();
};

// Runs one experiment. out_override, when nonempty, replaces cfg.out; one of
// the two must name a directory. Throws ConfigError / NumericError; callers
// map those to exit codes and the error JSON.
ExperimentResult run_experiment(const RunConfig& cfg, const std::string& out_override = "");

}  // namespace dsa2
