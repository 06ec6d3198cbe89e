#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsa2/config.hpp"
#include "dsa2/dsa2_engine.hpp"
#include "dsa2/errors.hpp"
#include "dsa2/experiment.hpp"
#include "dsa2/metrics_bounds.hpp"
#include "dsa2/trace.hpp"

namespace {

void write_error_json(const std::string& out_dir, const std::string& kind, const std::string& msg) {
  if (out_dir.empty()) return;
  try {
    std::filesystem::create_directories(out_dir);
    nlohmann::json j;
    j["error"] = {{"kind", kind}, {"message", msg}};
    std::ofstream f(std::filesystem::path(out_dir) / "error.json", std::ios::binary);
    f << j.dump(2) << "\n";
  } catch (...) {
    // the stderr line is the fallback report
  }
}

// Runs `seeds` replicates of cfg, shifting every seed by the replicate
// index, at most `jobs` at a time. Each replicate owns its own directory.
int run_replicates(const dsa2::RunConfig& base, const std::string& out_cli, int seeds, int jobs) {
  const std::string root = !out_cli.empty() ? out_cli : base.out;
  if (seeds > 1 && root.empty())
    throw dsa2::ConfigError("replicated runs need an output directory: set 'out' or pass --out");

  auto shifted = [&](int r) {
    dsa2::RunConfig c = base;
    if (c.topology.seed) *c.topology.seed += static_cast<std::uint64_t>(r);
    if (c.instance && c.instance->seed) *c.instance->seed += static_cast<std::uint64_t>(r);
    if (c.coupled && c.coupled->seed) *c.coupled->seed += static_cast<std::uint64_t>(r);
    return c;
  };
  auto out_for = [&](int r) {
    if (seeds == 1) return root;
    return (std::filesystem::path(root) / ("rep-" + std::to_string(r))).string();
  };

  std::atomic<int> next{0};
  std::mutex mtx;
  int worst = 0;
  auto work = [&] {
    for (;;) {
      int r = next.fetch_add(1);
      if (r >= seeds) return;
      try {
        dsa2::run_experiment(shifted(r), out_for(r));
      } catch (const dsa2::ConfigError& e) {
        std::lock_guard<std::mutex> lk(mtx);
        worst = std::max(worst, 2);
        std::cerr << "error (config): " << e.what() << "\n";
        write_error_json(out_for(r), "config", e.what());
      } catch (const dsa2::InfeasibleError& e) {
        std::lock_guard<std::mutex> lk(mtx);
        worst = 3;
        std::cerr << "error (infeasible): " << e.what() << "\n";
        write_error_json(out_for(r), "infeasible", e.what());
      } catch (const dsa2::NumericError& e) {
        std::lock_guard<std::mutex> lk(mtx);
        worst = 3;
        std::cerr << "error (numeric): " << e.what() << "\n";
        write_error_json(out_for(r), "numeric", e.what());
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(mtx);
        worst = 3;
        std::cerr << "error (internal): " << e.what() << "\n";
        write_error_json(out_for(r), "internal", e.what());
      }
    }
  };

  int nthreads = std::min(jobs, seeds);
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return worst;
}

struct BoundArgs {
  bool dual = false;
  double lip = 0.0, radius2 = 0.0;
  int n = 1;
  double sigma2 = 0.0, gamma = 0.0;
  long rounds = 10000;
  double grad2 = 0.0, lambda_star = 0.0, gap = 0.0;
};

int print_bounds(const BoundArgs& a) {
  std::vector<long> ts = dsa2::recorded_rounds(a.rounds, 0);
  std::cout << std::left;
  if (!a.dual) {
    dsa2::BoundParams bp{a.lip, a.radius2, a.n, a.sigma2, a.gamma};
    std::cout << "tracking deviation bound: " << dsa2::format_double(dsa2::disagreement_bound(bp)) << "\n";
    if (a.radius2 > 0.0)
      std::cout << "bound-minimizing gamma:   "
                << dsa2::format_double(dsa2::optimal_gamma(a.lip, std::sqrt(a.radius2), a.n, a.sigma2)) << "\n";
    std::cout << std::setw(12) << "t" << "objective_error_bound\n";
    for (long t : ts)
      std::cout << std::setw(12) << t << dsa2::format_double(dsa2::objective_error_bound(t, bp)) << "\n";
  } else {
    // Shortest round-trip doubles need up to 24 characters.
    dsa2::DualBoundParams dp{a.n, a.sigma2, a.gamma, a.grad2, a.lambda_star, a.gap};
    std::cout << std::setw(12) << "t" << std::setw(26) << "dual_error" << std::setw(26) << "penalty"
              << std::setw(26) << "primal_hi" << "primal_lo\n";
    for (long t : ts) {
      dsa2::DualBounds db = dsa2::dual_bounds(t, dp);
      std::cout << std::setw(12) << t << std::setw(26) << dsa2::format_double(db.dual_error) << std::setw(26)
                << dsa2::format_double(db.penalty) << std::setw(26) << dsa2::format_double(db.primal_hi)
                << dsa2::format_double(db.primal_lo) << "\n";
    }
  }
  return 0;
}

int guarded(const std::string& out_hint, const std::function<int()>& body) {
  try {
    return body();
  } catch (const dsa2::ConfigError& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    write_error_json(out_hint, "config", e.what());
    return 2;
  } catch (const dsa2::InfeasibleError& e) {
    std::cerr << "error (infeasible): " << e.what() << "\n";
    write_error_json(out_hint, "infeasible", e.what());
    return 3;
  } catch (const dsa2::NumericError& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    write_error_json(out_hint, "numeric", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << "\n";
    write_error_json(out_hint, "internal", e.what());
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed subgradient optimization with double averaging"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int seeds = 1;
  int jobs = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "run the experiment a config file describes");
  run_cmd->add_option("config", config_path, "TOML config file")->required();
  run_cmd->add_option("--out", out_dir, "output directory (overrides the config)");
  run_cmd->add_option("--seeds", seeds, "independent replicates with shifted seeds")->check(CLI::PositiveNumber);
  run_cmd->add_option("--jobs", jobs, "replicates to run in parallel")->check(CLI::PositiveNumber);

  CLI::App* cmp_cmd = app.add_subcommand(
      "compare", "run double averaging plus the dual-averaging and consensus baselines on one coupled instance");
  cmp_cmd->add_option("config", config_path, "TOML config file (dual_decomp or compare kind)")->required();
  cmp_cmd->add_option("--out", out_dir, "output directory (overrides the config)");
  cmp_cmd->add_option("--seeds", seeds, "independent replicates with shifted seeds")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--jobs", jobs, "replicates to run in parallel")->check(CLI::PositiveNumber);

  std::uint64_t rp_seed = 42;
  long rp_rounds = 100000;
  CLI::App* rp_cmd = app.add_subcommand("reproduce-paper",
                                        "rerun the shipped scenario: 50 agents on a small-world graph, "
                                        "coupled log-utility budget, gamma_t = 0.2 sqrt(t+1)");
  rp_cmd->add_option("--seed", rp_seed, "base seed (graph uses seed, utilities seed+1)");
  rp_cmd->add_option("--rounds", rp_rounds, "round budget")->check(CLI::PositiveNumber);
  rp_cmd->add_option("--out", out_dir, "output directory");

  BoundArgs ba;
  CLI::App* b_cmd = app.add_subcommand("bounds", "print theoretical bound tables");
  b_cmd->add_flag("--dual", ba.dual, "dual-decomposition bounds instead of the objective-error bound");
  b_cmd->add_option("--n", ba.n, "agent count")->required();
  b_cmd->add_option("--sigma2", ba.sigma2, "second-largest singular value of the mixing matrix")->required();
  b_cmd->add_option("--gamma", ba.gamma, "stepsize scale gamma_0")->required();
  b_cmd->add_option("--rounds", ba.rounds, "largest t in the table")->check(CLI::PositiveNumber);
  b_cmd->add_option("--lip", ba.lip, "Lipschitz constant L (primal table)");
  b_cmd->add_option("--radius2", ba.radius2, "R^2, max of the prox function over the set (primal table)");
  b_cmd->add_option("--grad2", ba.grad2, "D, squared dual-subgradient bound (dual table)");
  b_cmd->add_option("--lambda-star", ba.lambda_star, "norm of an optimal multiplier (dual table)");
  b_cmd->add_option("--gap", ba.gap, "C, f* plus sum of psi_j(0) (dual table)");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    return guarded(out_dir, [&] {
      dsa2::RunConfig cfg = dsa2::load_config_file(config_path);
      return run_replicates(cfg, out_dir, seeds, jobs);
    });
  }
  if (cmp_cmd->parsed()) {
    return guarded(out_dir, [&] {
      dsa2::RunConfig cfg = dsa2::load_config_file(config_path);
      if (cfg.kind != dsa2::RunKind::compare && cfg.kind != dsa2::RunKind::dual_decomp)
        throw dsa2::ConfigError("compare needs a config of kind \"compare\" or \"dual_decomp\"");
      cfg.kind = dsa2::RunKind::compare;
      return run_replicates(cfg, out_dir, seeds, jobs);
    });
  }
  if (rp_cmd->parsed()) {
    if (out_dir.empty()) out_dir = "reproduce_paper_out";
    return guarded(out_dir, [&] {
      dsa2::RunConfig cfg = dsa2::reproduce_paper_config(rp_seed, rp_rounds);
      dsa2::run_experiment(cfg, out_dir);
      return 0;
    });
  }
  if (b_cmd->parsed()) {
    return guarded("", [&] {
      if (!ba.dual && (ba.lip <= 0.0 || ba.radius2 <= 0.0))
        throw dsa2::ConfigError("the primal bound table needs --lip > 0 and --radius2 > 0");
      if (ba.dual && ba.grad2 <= 0.0)
        throw dsa2::ConfigError("the dual bound table needs --grad2 > 0");
      return print_bounds(ba);
    });
  }
  return 0;
}
