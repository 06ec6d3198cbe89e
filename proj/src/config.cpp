#include "dsa2/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dsa2/errors.hpp"
#include "dsa2/toml.hpp"
#include "dsa2/trace.hpp"

namespace dsa2 {
namespace {

using toml::Value;

[[noreturn]] void fail(const std::string& source, const std::string& msg) {
  throw ConfigError(source + ": " + msg);
}

// Typed access to one section with unknown-key detection: every key a
// reader hands out is remembered, and finish() flags the rest by name.
class Reader {
 public:
  Reader(const std::string& source, std::string name, const toml::Section* sec)
      : source_(source), name_(std::move(name)), sec_(sec) {}

  bool present() const { return sec_ != nullptr; }

  const Value* find(const std::string& key) {
    seen_.insert(key);
    if (!sec_) return nullptr;
    auto it = sec_->find(key);
    return it == sec_->end() ? nullptr : &it->second;
  }

  const Value& need(const std::string& key) {
    const Value* v = find(key);
    if (!v) fail(source_, "missing required key '" + key + "' in " + name_);
    return *v;
  }

  std::int64_t as_int(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::number || !v.is_int)
      fail(source_, "key '" + key + "' in " + name_ + " must be an integer");
    return v.inum;
  }

  std::uint64_t as_seed(const Value& v, const std::string& key) {
    std::int64_t i = as_int(v, key);
    if (i < 0) fail(source_, "key '" + key + "' in " + name_ + " must be >= 0");
    return static_cast<std::uint64_t>(i);
  }

  double as_double(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::number)
      fail(source_, "key '" + key + "' in " + name_ + " must be a number");
    return v.num;
  }

  std::string as_string(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::string)
      fail(source_, "key '" + key + "' in " + name_ + " must be a string");
    return v.str;
  }

  std::vector<double> as_list(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::array)
      fail(source_, "key '" + key + "' in " + name_ + " must be an array");
    std::vector<double> out;
    out.reserve(v.arr.size());
    for (const Value& e : v.arr) out.push_back(as_double(e, key));
    return out;
  }

  std::vector<std::vector<double>> as_rows(const Value& v, const std::string& key) {
    if (v.kind != Value::Kind::array)
      fail(source_, "key '" + key + "' in " + name_ + " must be an array of arrays");
    std::vector<std::vector<double>> out;
    out.reserve(v.arr.size());
    for (const Value& row : v.arr) {
      if (row.kind != Value::Kind::array)
        fail(source_, "key '" + key + "' in " + name_ + " must be an array of arrays");
      out.push_back(as_list(row, key));
    }
    return out;
  }

  void opt_int(const std::string& key, long& dst) {
    if (const Value* v = find(key)) dst = static_cast<long>(as_int(*v, key));
  }
  void opt_int(const std::string& key, int& dst) {
    if (const Value* v = find(key)) dst = static_cast<int>(as_int(*v, key));
  }
  void opt_seed(const std::string& key, std::optional<std::uint64_t>& dst) {
    if (const Value* v = find(key)) dst = as_seed(*v, key);
  }
  void opt_double(const std::string& key, double& dst) {
    if (const Value* v = find(key)) dst = as_double(*v, key);
  }
  void opt_string(const std::string& key, std::string& dst) {
    if (const Value* v = find(key)) dst = as_string(*v, key);
  }
  void opt_list(const std::string& key, std::vector<double>& dst) {
    if (const Value* v = find(key)) dst = as_list(*v, key);
  }
  void opt_rows(const std::string& key, std::vector<std::vector<double>>& dst) {
    if (const Value* v = find(key)) dst = as_rows(*v, key);
  }

  // Rejects any key the readers above never asked about.
  void finish() {
    if (!sec_) return;
    for (const auto& [key, value] : *sec_)
      if (!seen_.count(key)) fail(source_, "unknown key '" + key + "' in " + name_);
  }

 private:
  const std::string& source_;
  std::string name_;
  const toml::Section* sec_;
  std::set<std::string> seen_;
};

const toml::Section* section(const toml::Document& doc, const std::string& name) {
  auto it = doc.find(name);
  return it == doc.end() ? nullptr : &it->second;
}

RunKind parse_kind(const std::string& source, const std::string& word) {
  if (word == "dsa2") return RunKind::dsa2;
  if (word == "dual_decomp") return RunKind::dual_decomp;
  if (word == "baseline") return RunKind::baseline;
  if (word == "compare") return RunKind::compare;
  if (word == "reproduce_paper") return RunKind::reproduce_paper;
  fail(source, "unknown kind \"" + word + "\" (expected dsa2, dual_decomp, baseline, compare, or reproduce_paper)");
}

void validate_topology(const std::string& source, const TopologyConfig& t) {
  static const std::set<std::string> kinds{"path", "cycle", "complete", "star", "small_world", "edges"};
  if (!kinds.count(t.kind)) fail(source, "unknown topology kind \"" + t.kind + "\"");
  if (t.kind == "edges") {
    // n comes from the edge-list file; a positive n is cross-checked there.
    if (t.path.empty()) fail(source, "missing required key 'path' in [topology] for kind \"edges\"");
    return;
  }
  if (t.n < 1) fail(source, "key 'n' in [topology] must be >= 1");
  if (t.n == 1) return;  // single node, every kind degenerates to the same graph
  if (t.kind == "cycle" && t.n < 3) fail(source, "cycle topology needs n >= 3");
  if (t.kind == "small_world") {
    if (t.k < 2 || t.k % 2 != 0) fail(source, "key 'k' in [topology] must be even and >= 2");
    if (t.n <= t.k) fail(source, "small_world needs n > k");
    if (t.p_rewire < 0.0 || t.p_rewire > 1.0) fail(source, "key 'p_rewire' in [topology] must be in [0,1]");
    if (!t.seed) fail(source, "missing required key 'seed' in [topology] (small_world is randomized)");
  }
}

void validate_schedule(const std::string& source, const ScheduleConfig& s) {
  if (!s.table.empty()) {
    if (s.gamma0 != 0.0) fail(source, "keys 'gamma0' and 'table' in [schedule] are mutually exclusive");
    double prev = 0.0;
    for (double g : s.table) {
      if (g <= 0.0 || g < prev) fail(source, "key 'table' in [schedule] must be positive and non-decreasing");
      prev = g;
    }
    return;
  }
  if (s.gamma0 <= 0.0) fail(source, "key 'gamma0' in [schedule] must be > 0");
}

void validate_instance(const std::string& source, const InstanceConfig& ins) {
  if (ins.family != "abs_linear") fail(source, "unknown instance family \"" + ins.family + "\"");
  if (ins.m < 1) fail(source, "key 'm' in [instance] must be >= 1");
  static const std::set<std::string> sets{"box", "nonneg_orthant", "l2_ball", "simplex"};
  if (!sets.count(ins.set)) fail(source, "unknown set \"" + ins.set + "\" in [instance]");
  if (ins.a.empty() && !ins.seed)
    fail(source, "missing required key 'seed' in [instance] (coefficients are randomized)");
  for (const auto& row : ins.a)
    if (static_cast<int>(row.size()) != ins.m) fail(source, "key 'a' in [instance]: rows must have length m");
  for (const auto& row : ins.x0)
    if (static_cast<int>(row.size()) != ins.m) fail(source, "key 'x0' in [instance]: rows must have length m");
  if (ins.a_scale <= 0.0) fail(source, "key 'a_scale' in [instance] must be > 0");
  if (ins.set == "box") {
    auto len_ok = [&](const std::vector<double>& v) { return v.size() == 1 || static_cast<int>(v.size()) == ins.m; };
    if (ins.lo.empty() || ins.hi.empty()) fail(source, "keys 'lo' and 'hi' in [instance] are required for a box");
    if (!len_ok(ins.lo) || !len_ok(ins.hi)) fail(source, "keys 'lo'/'hi' in [instance] must have length 1 or m");
  }
  if (ins.set == "l2_ball" && ins.radius <= 0.0) fail(source, "key 'radius' in [instance] must be > 0");
  if (ins.truth_resolution < 0.0) fail(source, "key 'truth_resolution' in [instance] must be >= 0");
}

void validate_coupled(const std::string& source, const CoupledConfig& c) {
  if (c.c.size() != c.d.size()) fail(source, "keys 'c' and 'd' in [coupled] must have equal length");
  if (c.c.empty() && !c.seed)
    fail(source, "missing required key 'seed' in [coupled] (utilities are randomized)");
  auto range_ok = [](const std::vector<double>& r) { return r.size() == 2 && r[0] <= r[1] && r[0] >= 0.0; };
  if (!range_ok(c.c_range)) fail(source, "key 'c_range' in [coupled] must be [lo, hi] with 0 <= lo <= hi");
  if (!range_ok(c.d_range)) fail(source, "key 'd_range' in [coupled] must be [lo, hi] with 0 <= lo <= hi");
  if (c.floor < 0.0) fail(source, "key 'floor' in [coupled] must be >= 0");
  if (c.c.empty() && c.floor <= 0.0 && c.c_range[0] <= 0.0)
    fail(source, "key 'floor' in [coupled] must be > 0 when the draw range reaches 0");
  for (double v : c.c)
    if (v <= 0.0) fail(source, "key 'c' in [coupled] must be positive");
  for (double v : c.d)
    if (v <= 0.0) fail(source, "key 'd' in [coupled] must be positive");
  if (c.lambda0 < 0.0) fail(source, "key 'lambda0' in [coupled] must be >= 0");
}

void validate_baseline(const std::string& source, const BaselineConfig& b) {
  static const std::set<std::string> kinds{"dda", "dda_dual", "consensus_decaying", "consensus_constant"};
  if (!kinds.count(b.kind)) fail(source, "unknown baseline kind \"" + b.kind + "\"");
  if (b.a0 <= 0.0) fail(source, "key 'a0' in [baseline] must be > 0");
  if (b.alpha < 0.0) fail(source, "key 'alpha' in [baseline] must be >= 0");
}

}  // namespace

std::string to_string(RunKind k) {
  switch (k) {
    case RunKind::dsa2: return "dsa2";
    case RunKind::dual_decomp: return "dual_decomp";
    case RunKind::baseline: return "baseline";
    case RunKind::compare: return "compare";
    case RunKind::reproduce_paper: return "reproduce_paper";
  }
  throw ConfigError("to_string: bad RunKind");
}

RunConfig reproduce_paper_config(std::uint64_t seed, long rounds) {
  RunConfig cfg;
  cfg.kind = RunKind::reproduce_paper;
  cfg.rounds = rounds;
  cfg.record_every = 0;
  cfg.topology.kind = "small_world";
  cfg.topology.n = 50;
  cfg.topology.k = 4;
  cfg.topology.p_rewire = 0.2;
  cfg.topology.seed = seed;
  cfg.schedule.gamma0 = 0.2;
  cfg.coupled = CoupledConfig{};
  cfg.coupled->b = 5.0;
  cfg.coupled->seed = seed + 1;
  return cfg;
}

RunConfig load_config(const std::string& text, const std::string& source) {
  toml::Document doc = toml::parse(text, source);

  RunConfig cfg;
  Reader root(source, "the top level", section(doc, ""));
  {
    int sv = 1;
    root.opt_int("schema_version", sv);
    if (sv != 1) fail(source, "unsupported schema_version (expected 1)");
    cfg.schema_version = sv;
  }
  cfg.kind = parse_kind(source, root.as_string(root.need("kind"), "kind"));
  if (cfg.kind == RunKind::reproduce_paper) cfg.record_every = 0;
  root.opt_int("rounds", cfg.rounds);
  root.opt_int("record_every", cfg.record_every);
  root.opt_double("stop_tol", cfg.stop_tol);
  root.opt_string("out", cfg.out);
  root.finish();

  Reader topo(source, "[topology]", section(doc, "topology"));
  Reader sched(source, "[schedule]", section(doc, "schedule"));
  Reader inst(source, "[instance]", section(doc, "instance"));
  Reader coup(source, "[coupled]", section(doc, "coupled"));
  Reader base(source, "[baseline]", section(doc, "baseline"));

  for (const auto& [name, sec] : doc) {
    (void)sec;
    if (name != "" && name != "topology" && name != "schedule" && name != "instance" && name != "coupled" &&
        name != "baseline")
      fail(source, "unknown section [" + name + "]");
  }

  if (topo.present()) {
    topo.opt_string("kind", cfg.topology.kind);
    topo.opt_int("n", cfg.topology.n);
    topo.opt_int("k", cfg.topology.k);
    topo.opt_double("p_rewire", cfg.topology.p_rewire);
    topo.opt_seed("seed", cfg.topology.seed);
    topo.opt_string("path", cfg.topology.path);
  }
  if (sched.present()) {
    sched.opt_double("gamma0", cfg.schedule.gamma0);
    sched.opt_list("table", cfg.schedule.table);
  }
  if (inst.present()) {
    InstanceConfig ins;
    inst.opt_string("family", ins.family);
    inst.opt_int("m", ins.m);
    inst.opt_seed("seed", ins.seed);
    inst.opt_double("a_scale", ins.a_scale);
    inst.opt_rows("a", ins.a);
    inst.opt_string("set", ins.set);
    inst.opt_list("lo", ins.lo);
    inst.opt_list("hi", ins.hi);
    inst.opt_double("radius", ins.radius);
    inst.opt_rows("x0", ins.x0);
    inst.opt_double("truth_resolution", ins.truth_resolution);
    cfg.instance = std::move(ins);
  }
  if (coup.present()) {
    CoupledConfig cc;
    coup.opt_list("c", cc.c);
    coup.opt_list("d", cc.d);
    coup.opt_list("c_range", cc.c_range);
    coup.opt_list("d_range", cc.d_range);
    coup.opt_double("floor", cc.floor);
    coup.opt_seed("seed", cc.seed);
    cc.b = coup.as_double(coup.need("b"), "b");
    coup.opt_double("lambda0", cc.lambda0);
    cfg.coupled = std::move(cc);
  }
  if (base.present()) {
    BaselineConfig bc;
    base.opt_string("kind", bc.kind);
    base.opt_double("a0", bc.a0);
    base.opt_double("alpha", bc.alpha);
    cfg.baseline = std::move(bc);
  }
  topo.finish();
  sched.finish();
  inst.finish();
  coup.finish();
  base.finish();

  // Kind-specific section requirements.
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) fail(source, "kind \"" + to_string(cfg.kind) + "\" requires " + what);
  };
  auto forbid = [&](bool present, const std::string& what) {
    if (present) fail(source, "kind \"" + to_string(cfg.kind) + "\" does not use " + what);
  };

  switch (cfg.kind) {
    case RunKind::dsa2:
      require(topo.present(), "[topology]");
      require(sched.present(), "[schedule]");
      forbid(cfg.coupled.has_value(), "[coupled]");
      forbid(cfg.baseline.has_value(), "[baseline]");
      break;
    case RunKind::dual_decomp:
      require(topo.present(), "[topology]");
      require(sched.present(), "[schedule]");
      require(cfg.coupled.has_value(), "[coupled]");
      forbid(cfg.instance.has_value(), "[instance]");
      forbid(cfg.baseline.has_value(), "[baseline]");
      break;
    case RunKind::baseline:
      require(topo.present(), "[topology]");
      require(cfg.baseline.has_value(), "[baseline]");
      if (cfg.baseline) {
        validate_baseline(source, *cfg.baseline);
        if (cfg.baseline->kind == "dda") {
          require(sched.present(), "[schedule]");
          forbid(cfg.coupled.has_value(), "[coupled] (dda is a primal baseline)");
        } else {
          require(cfg.coupled.has_value(), "[coupled]");
          forbid(cfg.instance.has_value(), "[instance]");
          if (cfg.baseline->kind == "dda_dual") require(sched.present(), "[schedule]");
        }
      }
      break;
    case RunKind::compare:
      require(topo.present(), "[topology]");
      require(sched.present(), "[schedule]");
      require(cfg.coupled.has_value(), "[coupled]");
      forbid(cfg.instance.has_value(), "[instance]");
      break;
    case RunKind::reproduce_paper: {
      forbid(cfg.instance.has_value(), "[instance]");
      forbid(cfg.baseline.has_value(), "[baseline]");
      RunConfig defaults = reproduce_paper_config(42, 100000);
      if (!topo.present()) cfg.topology = defaults.topology;
      if (!sched.present()) cfg.schedule = defaults.schedule;
      if (!cfg.coupled) cfg.coupled = defaults.coupled;
      if (cfg.rounds == 0) cfg.rounds = defaults.rounds;
      break;
    }
  }

  if (cfg.rounds < 1) fail(source, "missing required key 'rounds' (must be >= 1)");
  if (cfg.record_every < 0) fail(source, "key 'record_every' must be >= 0");
  if (cfg.stop_tol < 0.0) fail(source, "key 'stop_tol' must be >= 0");

  validate_topology(source, cfg.topology);
  if (sched.present() || cfg.kind == RunKind::reproduce_paper) validate_schedule(source, cfg.schedule);
  if (cfg.instance) validate_instance(source, *cfg.instance);
  if (cfg.coupled) validate_coupled(source, *cfg.coupled);
  if (cfg.baseline) validate_baseline(source, *cfg.baseline);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str(), path);
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string list_str(const std::vector<double>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::string rows_str(const std::vector<std::vector<double>>& rows) {
  std::string out = "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += list_str(rows[i]);
  }
  return out + "]";
}

}  // namespace

std::string write_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "schema_version = " << cfg.schema_version << "\n";
  out << "kind = " << quoted(to_string(cfg.kind)) << "\n";
  out << "rounds = " << cfg.rounds << "\n";
  out << "record_every = " << cfg.record_every << "\n";
  if (cfg.stop_tol != 0.0) out << "stop_tol = " << format_double(cfg.stop_tol) << "\n";
  if (!cfg.out.empty()) out << "out = " << quoted(cfg.out) << "\n";

  out << "\n[topology]\n";
  out << "kind = " << quoted(cfg.topology.kind) << "\n";
  out << "n = " << cfg.topology.n << "\n";
  out << "k = " << cfg.topology.k << "\n";
  out << "p_rewire = " << format_double(cfg.topology.p_rewire) << "\n";
  if (cfg.topology.seed) out << "seed = " << *cfg.topology.seed << "\n";
  if (!cfg.topology.path.empty()) out << "path = " << quoted(cfg.topology.path) << "\n";

  out << "\n[schedule]\n";
  if (!cfg.schedule.table.empty())
    out << "table = " << list_str(cfg.schedule.table) << "\n";
  else
    out << "gamma0 = " << format_double(cfg.schedule.gamma0) << "\n";

  if (cfg.instance) {
    const InstanceConfig& ins = *cfg.instance;
    out << "\n[instance]\n";
    out << "family = " << quoted(ins.family) << "\n";
    out << "m = " << ins.m << "\n";
    if (ins.seed) out << "seed = " << *ins.seed << "\n";
    out << "a_scale = " << format_double(ins.a_scale) << "\n";
    if (!ins.a.empty()) out << "a = " << rows_str(ins.a) << "\n";
    out << "set = " << quoted(ins.set) << "\n";
    if (!ins.lo.empty()) out << "lo = " << list_str(ins.lo) << "\n";
    if (!ins.hi.empty()) out << "hi = " << list_str(ins.hi) << "\n";
    out << "radius = " << format_double(ins.radius) << "\n";
    if (!ins.x0.empty()) out << "x0 = " << rows_str(ins.x0) << "\n";
    out << "truth_resolution = " << format_double(ins.truth_resolution) << "\n";
  }
  if (cfg.coupled) {
    const CoupledConfig& cc = *cfg.coupled;
    out << "\n[coupled]\n";
    if (!cc.c.empty()) out << "c = " << list_str(cc.c) << "\n";
    if (!cc.d.empty()) out << "d = " << list_str(cc.d) << "\n";
    out << "c_range = " << list_str(cc.c_range) << "\n";
    out << "d_range = " << list_str(cc.d_range) << "\n";
    out << "floor = " << format_double(cc.floor) << "\n";
    if (cc.seed) out << "seed = " << *cc.seed << "\n";
    out << "b = " << format_double(cc.b) << "\n";
    out << "lambda0 = " << format_double(cc.lambda0) << "\n";
  }
  if (cfg.baseline) {
    const BaselineConfig& bc = *cfg.baseline;
    out << "\n[baseline]\n";
    out << "kind = " << quoted(bc.kind) << "\n";
    out << "a0 = " << format_double(bc.a0) << "\n";
    out << "alpha = " << format_double(bc.alpha) << "\n";
  }
  return out.str();
}

}  // namespace dsa2
