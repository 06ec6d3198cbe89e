#pragma once

// Run configuration: a small TOML schema (documented in the README) mapped
// onto plain structs.  load_config rejects unknown keys by name so typos
// fail loudly; write_config emits a canonical form that parses back equal.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsa2 {

enum class RunKind { dsa2, dual_decomp, baseline, compare, reproduce_paper };

std::string to_string(RunKind k);

struct TopologyConfig {
  std::string kind = "complete";  // path cycle complete star small_world edges
  int n = 0;
  int k = 4;                   // small_world lattice degree
  double p_rewire = 0.2;       // small_world rewiring probability
  std::optional<std::uint64_t> seed;
  std::string path;            // edge-list file for kind "edges"

  bool operator==(const TopologyConfig&) const = default;
};

struct ScheduleConfig {
  double gamma0 = 0.0;             // sqrt rule gamma0 * sqrt(t+1) when table empty
  std::vector<double> table;       // explicit gamma_t values, extended by the last entry

  bool operator==(const ScheduleConfig&) const = default;
};

struct InstanceConfig {
  std::string family = "abs_linear";
  int m = 1;
  std::optional<std::uint64_t> seed;     // required when a is empty
  double a_scale = 1.0;                  // coefficients drawn U(-a_scale, a_scale)
  std::vector<std::vector<double>> a;    // explicit n x m coefficients, optional
  std::string set = "box";               // box | nonneg_orthant | l2_ball | simplex
  std::vector<double> lo, hi;            // box bounds, length m or length 1 (broadcast)
  double radius = 1.0;                   // l2_ball
  std::vector<std::vector<double>> x0;   // explicit starts, optional (default: anchor)
  double truth_resolution = 1e-3;        // brute-force grid step; 0 disables the oracle

  bool operator==(const InstanceConfig&) const = default;
};

struct CoupledConfig {
  std::vector<double> c, d;              // explicit utilities; drawn when empty
  std::vector<double> c_range{0.0, 1.0}; // U(range) for draws
  std::vector<double> d_range{0.0, 1.0};
  double floor = 0.1;                    // draws are clamped up to this
  std::optional<std::uint64_t> seed;     // required when c or d is empty
  double b = 1.0;                        // coupled budget, split evenly across agents
  double lambda0 = 0.0;                  // initial multiplier, broadcast

  bool operator==(const CoupledConfig&) const = default;
};

struct BaselineConfig {
  std::string kind = "consensus_decaying";  // dda | dda_dual | consensus_decaying | consensus_constant
  double a0 = 1.0;                          // decaying stepsize a0/(t+1)
  double alpha = 0.01;                      // constant stepsize

  bool operator==(const BaselineConfig&) const = default;
};

struct RunConfig {
  int schema_version = 1;
  RunKind kind = RunKind::dsa2;
  long rounds = 0;
  long record_every = 1;  // 0 = log-spaced snapshots
  double stop_tol = 0.0;  // dsa2 kind: early exit when disagreement and
                          // objective change both drop below this; 0 = off
  std::string out;        // output directory; CLI --out overrides
  TopologyConfig topology;
  ScheduleConfig schedule;
  std::optional<InstanceConfig> instance;
  std::optional<CoupledConfig> coupled;
  std::optional<BaselineConfig> baseline;

  bool operator==(const RunConfig&) const = default;
};

// Parses and validates; source names the input in diagnostics.
RunConfig load_config(const std::string& text, const std::string& source);
RunConfig load_config_file(const std::string& path);

// Canonical emission; load_config(write_config(cfg)) == cfg after validation.
std::string write_config(const RunConfig& cfg);

// The reproduce_paper scenario with every default filled in.
RunConfig reproduce_paper_config(std::uint64_t seed, long rounds);

}  // namespace dsa2
