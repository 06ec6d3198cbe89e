#include "dsa2/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "dsa2/baselines.hpp"
#include "dsa2/dsa2_engine.hpp"
#include "dsa2/dual_decomposition.hpp"
#include "dsa2/errors.hpp"
#include "dsa2/metrics_bounds.hpp"
#include "dsa2/reference_oracles.hpp"
#include "dsa2/rng.hpp"
#include "dsa2/svg_plot.hpp"
#include "dsa2/topology.hpp"
#include "dsa2/trace.hpp"

namespace dsa2 {
namespace {

using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Net {
  Topology topo;
  WeightMatrix p;
  double sig2 = 0.0;
};

Net build_net(const TopologyConfig& tc) {
  if (tc.kind != "edges" && tc.n == 1) {
    // Single agent: the only doubly stochastic 1x1 matrix.
    return {make_topology(1, {}), weight_matrix_from_dense(1, {1.0}), 0.0};
  }
  Topology topo;
  if (tc.kind == "edges") {
    topo = parse_edge_list(slurp(tc.path));
    if (tc.n > 0 && tc.n != topo.n)
      throw ConfigError("[topology] n=" + std::to_string(tc.n) + " does not match edge list (n=" +
                        std::to_string(topo.n) + ")");
    if (!is_connected(topo)) throw ConfigError("edge-list graph is not connected");
  } else if (tc.kind == "small_world") {
    topo = gen_small_world(tc.n, tc.k, tc.p_rewire, *tc.seed);
  } else {
    GraphKind kind = tc.kind == "path"    ? GraphKind::path
                     : tc.kind == "cycle" ? GraphKind::cycle
                     : tc.kind == "star"  ? GraphKind::star
                                          : GraphKind::complete;
    topo = gen_named(kind, tc.n);
  }
  WeightMatrix p = metropolis_weights(topo);
  double s2 = topo.n == 1 ? 0.0 : sigma2(p);
  return {std::move(topo), std::move(p), s2};
}

// ---- primal pipeline -------------------------------------------------

struct PrimalProblem {
  std::vector<LocalObjective> objectives;
  ProxSetup setup = ProxSetup::quadratic(FeasibleSet::box({-1.0}, {1.0}));
  Mat x0;
  int m = 1;
  double lip = 0.0;
  bool have_r2 = false;
  double r2 = 0.0;
  std::optional<GroundTruth> truth;
};

InstanceConfig default_instance() {
  // Deterministic fallback so a config without [instance] stays seedless:
  // every agent owns f_i(x) = |x| on [-1, 1].
  InstanceConfig ins;
  ins.m = 1;
  ins.set = "box";
  ins.lo = {-1.0};
  ins.hi = {1.0};
  ins.a = {{1.0}};
  return ins;
}

std::vector<double> broadcast(const std::vector<double>& v, int m, const char* key) {
  if (static_cast<int>(v.size()) == m) return v;
  if (v.size() == 1) return std::vector<double>(m, v[0]);
  throw ConfigError(std::string("[instance] ") + key + " must have length 1 or m");
}

PrimalProblem build_primal(const InstanceConfig* maybe, int n) {
  const bool defaulted = maybe == nullptr;
  InstanceConfig ins = defaulted ? default_instance() : *maybe;
  const int m = ins.m;

  PrimalProblem pp;
  pp.m = m;
  if (ins.set == "simplex") {
    pp.setup = ProxSetup::entropic(m);
  } else {
    FeasibleSet set = ins.set == "box" ? FeasibleSet::box(broadcast(ins.lo, m, "lo"), broadcast(ins.hi, m, "hi"))
                      : ins.set == "nonneg_orthant" ? FeasibleSet::nonneg_orthant(m)
                                                    : FeasibleSet::l2_ball(ins.radius, m);
    pp.setup = ProxSetup::quadratic(std::move(set));
  }

  std::vector<std::vector<double>> rows = ins.a;
  if (defaulted) {
    rows.assign(n, std::vector<double>(m, 1.0));
  } else if (rows.empty()) {
    SplitMix64 rng(*ins.seed);
    rows.assign(n, std::vector<double>(m));
    for (auto& row : rows)
      for (double& v : row) v = rng.uniform(-ins.a_scale, ins.a_scale);
  } else if (static_cast<int>(rows.size()) != n) {
    throw ConfigError("[instance] a must have one row per agent");
  }
  pp.objectives.reserve(n);
  for (auto& row : rows) {
    pp.objectives.push_back(make_abs_linear_objective(row, pp.setup.norm));
    pp.lip = std::max(pp.lip, pp.objectives.back().lipschitz_bound);
  }

  pp.x0 = Mat(n, m);
  if (!ins.x0.empty()) {
    if (static_cast<int>(ins.x0.size()) != n) throw ConfigError("[instance] x0 must have one row per agent");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) pp.x0.at(i, j) = ins.x0[i][j];
  } else {
    for (int i = 0; i < n; ++i)
      std::copy(pp.setup.anchor.begin(), pp.setup.anchor.end(), pp.x0.row(i).begin());
  }

  try {
    pp.r2 = pp.setup.d_max_over_set();
    pp.have_r2 = true;
  } catch (const NumericError&) {
    // unbounded set: no R^2, bound columns stay empty
  }

  const auto set_kind = pp.setup.set.kind;
  if (ins.truth_resolution > 0.0 && m <= 2 &&
      (set_kind == FeasibleSet::Kind::box || set_kind == FeasibleSet::Kind::l2_ball)) {
    const auto& objs = pp.objectives;
    auto global = [&objs](std::span<const double> x) {
      double s = 0.0;
      for (const auto& o : objs) s += o.value(x);
      return s / static_cast<double>(objs.size());
    };
    pp.truth = brute_force_min(global, pp.setup.set, ins.truth_resolution);
  }
  return pp;
}

// run_dsa2 with the optional convergence exit: stops once the consensus
// diameter and the change of the global objective at the mean iterate both
// drop below tol. Recording matches run_dsa2, plus the stop round itself.
PrimalTrace run_dsa2_early_stop(const std::vector<LocalObjective>& fs, const ProxSetup& setup,
                                const WeightMatrix& p, const GammaSchedule& sched, const Mat& x0, long rounds,
                                const std::vector<long>& record_at, double tol, long& ran) {
  Dsa2State st = dsa2_init(fs, setup, x0);
  const int n = x0.rows, m = x0.cols;
  PrimalTrace tr;
  tr.n = n;
  tr.m = m;

  std::vector<double> gsum(m, 0.0);
  auto fold_mean_grad = [&] {
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += st.tracker.last_grad.at(i, j);
      gsum[j] += s / n;
    }
  };
  fold_mean_grad();

  auto snapshot = [&](long t) {
    tr.t.push_back(t);
    tr.x.push_back(st.x);
    tr.x_hat.push_back(st.x_hat);
    tr.z.push_back(st.tracker.z);
    tr.gsum.push_back(gsum);
  };

  std::vector<double> diff(m), mean(m);
  double prev_obj = kNan;
  size_t ri = 0;
  ran = rounds;
  for (long t = 1; t <= rounds; ++t) {
    dsa2_round(st, fs, setup, p, sched);
    fold_mean_grad();

    double diam = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j2 = i + 1; j2 < n; ++j2) {
        for (int k = 0; k < m; ++k) diff[k] = st.x.at(i, k) - st.x.at(j2, k);
        diam = std::max(diam, primal_norm(setup.norm, diff));
      }
    for (int k = 0; k < m; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += st.x.at(i, k);
      mean[k] = s / n;
    }
    double obj = 0.0;
    for (const auto& f : fs) obj += f.value(mean);
    obj /= static_cast<double>(n);

    bool stop = std::isfinite(prev_obj) && diam <= tol && std::fabs(obj - prev_obj) <= tol;
    prev_obj = obj;

    bool want = record_at.empty() || (ri < record_at.size() && record_at[ri] == t);
    if (want || stop) snapshot(t);
    while (ri < record_at.size() && record_at[ri] <= t) ++ri;
    if (stop) {
      ran = t;
      break;
    }
  }
  return tr;
}

std::vector<std::string> primal_header(int m) {
  std::vector<std::string> h{"algo", "t",        "agent",     "objective", "obj_err",
                             "diameter", "track_dev", "obj_bound", "x_norm"};
  if (m <= 4)
    for (int j = 0; j < m; ++j) h.push_back("x" + std::to_string(j));
  return h;
}

void append_primal_rows(std::vector<std::vector<std::string>>& rows, const std::string& algo,
                        const PrimalTrace& tr, const PrimalMetrics& met,
                        const std::function<double(long)>& bound) {
  for (size_t r = 0; r < tr.t.size(); ++r) {
    double b = bound(tr.t[r]);
    for (int i = 0; i < tr.n; ++i) {
      std::vector<std::string> row;
      row.reserve(9 + (tr.m <= 4 ? tr.m : 0));
      row.push_back(algo);
      row.push_back(std::to_string(tr.t[r]));
      row.push_back(std::to_string(i));
      row.push_back(format_double(met.objective[r][i]));
      row.push_back(format_double(met.obj_err[r][i]));
      row.push_back(format_double(met.diameter[r]));
      row.push_back(format_double(met.track_dev[r][i]));
      row.push_back(format_double(b));
      row.push_back(format_double(l2_norm(tr.x[r].row(i))));
      if (tr.m <= 4)
        for (int j = 0; j < tr.m; ++j) row.push_back(format_double(tr.x[r].at(i, j)));
      rows.push_back(std::move(row));
    }
  }
}

json truth_json(const GroundTruth& g) {
  json j;
  j["f_star"] = g.f_star;
  j["kkt_residual"] = g.kkt_residual;
  j["x_star"] = g.x_star;
  return j;
}

ExperimentResult run_primal(const RunConfig& cfg, const std::string& out_dir) {
  auto t0 = std::chrono::steady_clock::now();
  Net net = build_net(cfg.topology);
  PrimalProblem pp = build_primal(cfg.instance ? &*cfg.instance : nullptr, net.topo.n);
  GammaSchedule sched = cfg.schedule.table.empty() ? GammaSchedule::sqrt_rule(cfg.schedule.gamma0)
                                                   : GammaSchedule::from_table(cfg.schedule.table);
  std::vector<long> record = recorded_rounds(cfg.rounds, cfg.record_every);

  const bool is_dda = cfg.kind == RunKind::baseline;
  const std::string algo = is_dda ? "dda" : "dsa2";
  long ran = cfg.rounds;
  PrimalTrace tr;
  if (is_dda) {
    tr = run_dda(pp.objectives, pp.setup, net.p, sched, pp.x0, cfg.rounds, record);
  } else if (cfg.stop_tol > 0.0) {
    tr = run_dsa2_early_stop(pp.objectives, pp.setup, net.p, sched, pp.x0, cfg.rounds, record, cfg.stop_tol, ran);
  } else {
    tr = run_dsa2(pp.objectives, pp.setup, net.p, sched, pp.x0, cfg.rounds, record);
  }
  PrimalMetrics met = measure_metrics(tr, pp.objectives, pp.setup.norm, pp.truth ? &*pp.truth : nullptr);

  // The error bound assumes the sqrt stepsize rule and a bounded prox
  // function; otherwise the column stays empty.
  const bool bound_ok = pp.have_r2 && cfg.schedule.table.empty();
  BoundParams bp{pp.lip, pp.r2, net.topo.n, net.sig2, cfg.schedule.gamma0};
  auto bound = [&](long t) { return bound_ok ? objective_error_bound(t, bp) : kNan; };

  std::vector<std::vector<std::string>> rows;
  append_primal_rows(rows, algo, tr, met, bound);

  std::filesystem::path dir(out_dir);
  ExperimentResult res;
  res.out_dir = out_dir;
  res.sigma2 = net.sig2;
  res.rounds_run = ran;

  std::string trace_path = (dir / "trace.csv").string();
  write_file(trace_path, render_csv("dsa2.primal.v1", primal_header(pp.m), rows));
  res.artifacts.push_back(trace_path);
  std::string topo_path = (dir / "topology.txt").string();
  write_file(topo_path, to_edge_list(net.topo));
  res.artifacts.push_back(topo_path);
  for (std::string& p2 : emit_plots(trace_path, out_dir)) res.artifacts.push_back(std::move(p2));

  json meta;
  meta["schema"] = "dsa2.meta.v1";
  meta["kind"] = to_string(cfg.kind);
  meta["algo"] = algo;
  meta["config_toml"] = write_config(cfg);
  meta["prng"] = "splitmix64";
  meta["graph"] = {{"n", net.topo.n}, {"edge_count", net.topo.edges.size()}, {"sigma2", net.sig2}};
  meta["rounds"] = {{"budget", cfg.rounds}, {"run", ran}};
  meta["constants"] = {{"lip", pp.lip},
                       {"radius2", pp.have_r2 ? json(pp.r2) : json()},
                       {"gamma0", cfg.schedule.table.empty() ? json(cfg.schedule.gamma0) : json()}};
  meta["truth"] = pp.truth ? truth_json(*pp.truth) : json();
  res.wall_seconds = seconds_since(t0);
  meta["wall_seconds"] = res.wall_seconds;
  meta["artifacts"] = res.artifacts;
  std::string meta_path = (dir / "meta.json").string();
  write_file(meta_path, meta.dump(2) + "\n");
  res.artifacts.push_back(meta_path);
  return res;
}

// ---- dual pipeline ---------------------------------------------------

struct CoupledProblem {
  std::vector<double> c, d;
  double b = 0.0;
  std::vector<CoupledAgentSpec> agents;
  Mat lam0;
  CoupledTruth truth;
  double gap_c = 0.0;     // C in the penalty bound
  double dual_star = 0.0; // sum_j psi_j(lambda*)
};

CoupledProblem build_coupled(const CoupledConfig& cc, int n) {
  CoupledProblem cp;
  cp.b = cc.b;
  if (!cc.c.empty()) {
    if (static_cast<int>(cc.c.size()) != n) throw ConfigError("[coupled] c and d must have one entry per agent");
    cp.c = cc.c;
    cp.d = cc.d;
  } else {
    SplitMix64 rng(*cc.seed);
    cp.c.resize(n);
    cp.d.resize(n);
    for (int i = 0; i < n; ++i) {
      cp.c[i] = std::max(cc.floor, rng.uniform(cc.c_range[0], cc.c_range[1]));
      cp.d[i] = std::max(cc.floor, rng.uniform(cc.d_range[0], cc.d_range[1]));
    }
  }
  cp.agents.reserve(n);
  for (int i = 0; i < n; ++i) cp.agents.push_back(make_log_utility_agent(cp.c[i], cp.d[i], cp.b / n));
  cp.lam0 = Mat(n, 1, cc.lambda0);
  cp.truth = solve_example_dual_bisection(cp.c, cp.d, cp.b);
  cp.gap_c = duality_gap_constant(cp.agents, cp.truth.f_star);
  std::vector<double> ls{cp.truth.lambda_star};
  for (const auto& agent : cp.agents) cp.dual_star += psi_eval(agent, ls).value;
  return cp;
}

std::vector<std::string> dual_header(int m) {
  std::vector<std::string> h{"algo",     "t",         "agent",         "dual_value",      "dual_err",
                             "primal_value", "primal_err", "penalty",   "diameter",        "track_dev",
                             "dual_bound",   "penalty_bound", "primal_hi_bound", "primal_lo_bound", "lam_norm"};
  if (m <= 4)
    for (int j = 0; j < m; ++j) h.push_back("lam" + std::to_string(j));
  return h;
}

void append_dual_rows(std::vector<std::vector<std::string>>& rows, const std::string& algo, const DualTrace& tr,
                      const DualMetrics& met, bool has_tracking, const std::optional<DualBoundParams>& dbp) {
  for (size_t r = 0; r < tr.t.size(); ++r) {
    long t = tr.t[r];
    DualBounds db;
    if (dbp) db = dual_bounds(t, *dbp);
    for (int i = 0; i < tr.n; ++i) {
      std::vector<std::string> row;
      row.reserve(15 + (tr.m <= 4 ? tr.m : 0));
      row.push_back(algo);
      row.push_back(std::to_string(t));
      row.push_back(std::to_string(i));
      row.push_back(format_double(met.dual_value[r][i]));
      row.push_back(format_double(met.dual_err[r][i]));
      row.push_back(format_double(tr.primal_value[t - 1]));
      row.push_back(format_double(met.primal_err[t - 1]));
      row.push_back(format_double(tr.penalty[t - 1]));
      row.push_back(format_double(met.diameter[r]));
      row.push_back(has_tracking ? format_double(met.track_dev[r][i]) : "");
      row.push_back(dbp ? format_double(db.dual_error) : "");
      row.push_back(dbp ? format_double(db.penalty) : "");
      row.push_back(dbp ? format_double(db.primal_hi) : "");
      row.push_back(dbp ? format_double(db.primal_lo) : "");
      row.push_back(format_double(l2_norm(tr.lam[r].row(i))));
      if (tr.m <= 4)
        for (int j = 0; j < tr.m; ++j) row.push_back(format_double(tr.lam[r].at(i, j)));
      rows.push_back(std::move(row));
    }
  }
}

ExperimentResult run_dual(const RunConfig& cfg, const std::string& out_dir,
                          const std::vector<std::string>& algos) {
  auto t0 = std::chrono::steady_clock::now();
  Net net = build_net(cfg.topology);
  CoupledProblem cp = build_coupled(*cfg.coupled, net.topo.n);

  const bool needs_sched =
      std::any_of(algos.begin(), algos.end(), [](const std::string& a) { return a == "dsa2_dd" || a == "dda_dual"; });
  GammaSchedule sched = GammaSchedule::sqrt_rule(1.0);
  if (needs_sched)
    sched = cfg.schedule.table.empty() ? GammaSchedule::sqrt_rule(cfg.schedule.gamma0)
                                       : GammaSchedule::from_table(cfg.schedule.table);
  std::vector<long> record = recorded_rounds(cfg.rounds, cfg.record_every);
  BaselineConfig bc = cfg.baseline ? *cfg.baseline : BaselineConfig{};

  struct AlgoRun {
    std::string name;
    DualTrace tr;
    DualMetrics met;
    bool has_tracking = false;
  };
  std::vector<AlgoRun> runs;
  for (const std::string& name : algos) {
    AlgoRun run;
    run.name = name;
    if (name == "dsa2_dd") {
      run.tr = run_dual_decomp(cp.agents, net.p, sched, cp.lam0, cfg.rounds, record);
      run.has_tracking = true;
    } else if (name == "dda_dual") {
      run.tr = run_dda_dual(cp.agents, net.p, sched, cp.lam0, cfg.rounds, record);
      run.has_tracking = true;
    } else if (name == "consensus_decaying") {
      run.tr = run_consensus_dual_subgrad(cp.agents, net.p, ConsensusStepsize::decaying(bc.a0), cp.lam0,
                                          cfg.rounds, record);
    } else if (name == "consensus_constant") {
      run.tr = run_consensus_dual_subgrad(cp.agents, net.p, ConsensusStepsize::constant(bc.alpha), cp.lam0,
                                          cfg.rounds, record);
    } else {
      throw ConfigError("unknown algorithm '" + name + "'");
    }
    run.met = measure_dual_metrics(run.tr, cp.agents, &cp.truth);
    runs.push_back(std::move(run));
  }

  // Theory columns and checks follow the double-averaging run when the
  // sqrt stepsize rule is in force.
  std::optional<DualBoundParams> dbp;
  const AlgoRun* main_run = nullptr;
  for (const AlgoRun& run : runs)
    if (run.name == "dsa2_dd") main_run = &run;
  if (main_run && cfg.schedule.table.empty()) {
    DualBoundParams p;
    p.n = net.topo.n;
    p.sig2 = net.sig2;
    p.gamma = cfg.schedule.gamma0;
    p.grad_bound2 = main_run->tr.grad_max * main_run->tr.grad_max;
    p.lambda_star_norm = cp.truth.lambda_star;
    p.gap = cp.gap_c;
    dbp = p;
  }

  ExperimentResult res;
  res.out_dir = out_dir;
  res.sigma2 = net.sig2;
  res.rounds_run = cfg.rounds;
  if (main_run) {
    res.penalty_at_final = main_run->tr.penalty.back();
    res.penalty_at_100 = main_run->tr.penalty[std::min<long>(100, cfg.rounds) - 1];
  }
  if (dbp) {
    res.dual_checks_apply = true;
    res.penalty_below_bound = true;
    res.primal_sandwich_holds = true;
    res.dual_error_below_bound = true;
    const double eps = 1e-9;
    for (long t = 1; t <= cfg.rounds; ++t) {
      DualBounds db = dual_bounds(t, *dbp);
      if (main_run->tr.penalty[t - 1] > db.penalty + eps) res.penalty_below_bound = false;
      double perr = main_run->met.primal_err[t - 1];
      if (perr > db.primal_hi + eps || perr < db.primal_lo - eps) res.primal_sandwich_holds = false;
    }
    for (size_t r = 0; r < main_run->tr.t.size(); ++r) {
      DualBounds db = dual_bounds(main_run->tr.t[r], *dbp);
      for (int i = 0; i < main_run->tr.n; ++i)
        if (main_run->met.dual_err[r][i] > db.dual_error + eps) res.dual_error_below_bound = false;
    }
  }

  std::vector<std::vector<std::string>> rows;
  for (const AlgoRun& run : runs)
    append_dual_rows(rows, run.name, run.tr, run.met, run.has_tracking,
                     run.name == "dsa2_dd" ? dbp : std::nullopt);

  std::filesystem::path dir(out_dir);
  std::string trace_path = (dir / "trace.csv").string();
  write_file(trace_path, render_csv("dsa2.dual.v1", dual_header(1), rows));
  res.artifacts.push_back(trace_path);
  std::string topo_path = (dir / "topology.txt").string();
  write_file(topo_path, to_edge_list(net.topo));
  res.artifacts.push_back(topo_path);
  for (std::string& p2 : emit_plots(trace_path, out_dir)) res.artifacts.push_back(std::move(p2));

  json meta;
  meta["schema"] = "dsa2.meta.v1";
  meta["kind"] = to_string(cfg.kind);
  {
    json names = json::array();
    for (const AlgoRun& run : runs) names.push_back(run.name);
    meta["algos"] = names;
  }
  meta["config_toml"] = write_config(cfg);
  meta["prng"] = "splitmix64";
  meta["graph"] = {{"n", net.topo.n}, {"edge_count", net.topo.edges.size()}, {"sigma2", net.sig2}};
  meta["rounds"] = {{"budget", cfg.rounds}, {"run", cfg.rounds}};
  {
    json c;
    c["gamma0"] = needs_sched && cfg.schedule.table.empty() ? json(cfg.schedule.gamma0) : json();
    if (main_run) {
      c["grad_max"] = main_run->tr.grad_max;
      c["grad_bound2"] = main_run->tr.grad_max * main_run->tr.grad_max;
    }
    c["gap"] = cp.gap_c;
    c["lambda_star_norm"] = cp.truth.lambda_star;
    meta["constants"] = c;
  }
  {
    json t;
    t["f_star"] = cp.truth.f_star;
    t["lambda_star"] = cp.truth.lambda_star;
    t["dual_star"] = cp.dual_star;
    t["kkt_residual"] = cp.truth.kkt_residual;
    if (net.topo.n <= 64) t["x_star"] = cp.truth.x_star;
    meta["truth"] = t;
  }
  if (dbp) {
    meta["checks"] = {{"penalty_below_bound", res.penalty_below_bound},
                      {"primal_sandwich_holds", res.primal_sandwich_holds},
                      {"dual_error_below_bound", res.dual_error_below_bound},
                      {"penalty_at_100", res.penalty_at_100},
                      {"penalty_at_final", res.penalty_at_final}};
  } else {
    meta["checks"] = json();
  }
  res.wall_seconds = seconds_since(t0);
  meta["wall_seconds"] = res.wall_seconds;
  meta["artifacts"] = res.artifacts;
  std::string meta_path = (dir / "meta.json").string();
  write_file(meta_path, meta.dump(2) + "\n");
  res.artifacts.push_back(meta_path);
  return res;
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& cfg, const std::string& out_override) {
  std::string out = !out_override.empty() ? out_override : cfg.out;
  if (out.empty()) throw ConfigError("no output directory: set 'out' in the config or pass --out");
  std::filesystem::create_directories(out);

  switch (cfg.kind) {
    case RunKind::dsa2:
      return run_primal(cfg, out);
    case RunKind::baseline:
      if (cfg.baseline->kind == "dda") return run_primal(cfg, out);
      return run_dual(cfg, out, {cfg.baseline->kind});
    case RunKind::dual_decomp:
    case RunKind::reproduce_paper:
      return run_dual(cfg, out, {"dsa2_dd"});
    case RunKind::compare:
      return run_dual(cfg, out, {"dsa2_dd", "dda_dual", "consensus_decaying", "consensus_constant"});
  }
  throw ConfigError("run_experiment: bad RunKind");
}

}  // namespace dsa2
