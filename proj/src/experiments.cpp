#include "dtrust/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "dtrust/error.hpp"
#include "dtrust/random.hpp"

namespace dtrust::experiments {

namespace fs = std::filesystem;
using graph::NetworkInstance;

const char* to_string(GraphKind kind) noexcept {
  switch (kind) {
    case GraphKind::Cyclic: return "cyclic";
    case GraphKind::ErdosRenyi: return "erdos_renyi";
    case GraphKind::Complete: return "complete";
    case GraphKind::FixtureFile: return "fixture_file";
  }
  return "unknown";
}

GraphKind parse_graph_kind(const std::string& text) {
  if (text == "cyclic") return GraphKind::Cyclic;
  if (text == "erdos_renyi" || text == "er") return GraphKind::ErdosRenyi;
  if (text == "complete") return GraphKind::Complete;
  if (text == "fixture_file" || text == "fixture") return GraphKind::FixtureFile;
  throw ConfigRejected("unknown graph_kind '" + text + "'");
}

double ExperimentConfig::er_probability() const {
  return er_edge_prob.value_or(graph::default_er_probability(n_legit));
}

observation::TrustObservationModel ExperimentConfig::model() const {
  try {
    return {alpha_legit, alpha_malicious};
  } catch (const InvalidArgument& e) {
    throw ConfigRejected(e.what());
  }
}

void ExperimentConfig::validate() const {
  if (n_trials < 1) throw ConfigRejected("n_trials must be at least 1");
  if (max_rounds < 1) throw ConfigRejected("max_rounds must be at least 1");
  if (graph_kind == GraphKind::FixtureFile) {
    if (graph_file.empty()) throw ConfigRejected("graph_kind fixture_file needs graph_file");
  } else {
    if (n_legit < 2) throw ConfigRejected("n_legit must be at least 2");
    if (n_malicious > 0 && !(malicious_edge_prob > 0.0 && malicious_edge_prob <= 1.0)) {
      throw ConfigRejected("malicious_edge_prob must lie in (0, 1]");
    }
    if (graph_kind == GraphKind::ErdosRenyi) {
      const double p = er_probability();
      if (!(p > 0.0 && p <= 1.0)) throw ConfigRejected("er_edge_prob must lie in (0, 1]");
    }
  }
  (void)model();
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "name",         "graph_kind",      "n_legit",    "n_malicious", "malicious_edge_prob",
      "er_edge_prob", "alpha_legit",     "alpha_malicious",           "adversary",
      "max_rounds",   "n_trials",        "master_seed", "graph_file",  "out_dir",
      "skip_assumption_check",           "diameter_scope"};
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& raw) {
  const std::string s = unquote(raw);
  if (s.empty() || s.find_first_not_of("0123456789_") != std::string::npos) {
    throw ConfigRejected(key + ": expected a non-negative integer, got '" + raw + "'");
  }
  std::string digits;
  for (char c : s) {
    if (c != '_') digits.push_back(c);
  }
  try {
    return std::stoull(digits);
  } catch (const std::exception&) {
    throw ConfigRejected(key + ": integer out of range");
  }
}

double parse_real(const std::string& key, const std::string& raw) {
  const std::string s = unquote(raw);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigRejected(key + ": expected a number, got '" + raw + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw ConfigRejected(key + ": expected a number, got '" + raw + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string s = unquote(raw);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigRejected(key + ": expected true or false, got '" + raw + "'");
}

observation::Interval parse_interval(const std::string& key, const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigRejected(key + ": expected [lo, hi], got '" + raw + "'");
  }
  s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos) {
    throw ConfigRejected(key + ": expected exactly two values in [lo, hi]");
  }
  return {parse_real(key, s.substr(0, comma)), parse_real(key, s.substr(comma + 1))};
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "name") {
    cfg.name = unquote(value);
  } else if (key == "graph_kind") {
    cfg.graph_kind = parse_graph_kind(unquote(value));
  } else if (key == "n_legit") {
    cfg.n_legit = parse_unsigned(key, value);
  } else if (key == "n_malicious") {
    cfg.n_malicious = parse_unsigned(key, value);
  } else if (key == "malicious_edge_prob") {
    cfg.malicious_edge_prob = parse_real(key, value);
  } else if (key == "er_edge_prob") {
    const std::string s = unquote(value);
    if (s == "default" || s.empty()) {
      cfg.er_edge_prob.reset();
    } else {
      cfg.er_edge_prob = parse_real(key, value);
    }
  } else if (key == "alpha_legit") {
    cfg.alpha_legit = parse_interval(key, value);
  } else if (key == "alpha_malicious") {
    cfg.alpha_malicious = parse_interval(key, value);
  } else if (key == "adversary") {
    if (unquote(value) != "inversion") {
      throw ConfigRejected("adversary: only 'inversion' is configurable from text");
    }
  } else if (key == "max_rounds") {
    cfg.max_rounds = parse_unsigned(key, value);
  } else if (key == "n_trials") {
    cfg.n_trials = parse_unsigned(key, value);
  } else if (key == "master_seed") {
    cfg.master_seed = parse_unsigned(key, value);
  } else if (key == "graph_file") {
    cfg.graph_file = unquote(value);
  } else if (key == "out_dir") {
    cfg.out_dir = unquote(value);
  } else if (key == "skip_assumption_check") {
    cfg.skip_assumption_check = parse_bool(key, value);
  } else if (key == "diameter_scope") {
    const std::string s = unquote(value);
    if (s == "legit") {
      cfg.diameter_scope = analysis::DiameterScope::LegitimateSubgraph;
    } else if (s == "full") {
      cfg.diameter_scope = analysis::DiameterScope::FullGraph;
    } else {
      throw ConfigRejected("diameter_scope: expected legit or full, got '" + s + "'");
    }
  } else {
    throw ConfigRejected("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Strip comments outside quotes.
    bool in_quote = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '"') in_quote = !in_quote;
      if (line[k] == '#' && !in_quote) {
        line.resize(k);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigRejected("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigRejected("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  auto interval = [](const observation::Interval& iv) {
    return "[" + format_real(iv.lo) + ", " + format_real(iv.hi) + "]";
  };
  os << "name = " << quoted(cfg.name) << '\n'
     << "graph_kind = " << quoted(to_string(cfg.graph_kind)) << '\n'
     << "n_legit = " << cfg.n_legit << '\n'
     << "n_malicious = " << cfg.n_malicious << '\n'
     << "malicious_edge_prob = " << format_real(cfg.malicious_edge_prob) << '\n';
  if (cfg.er_edge_prob) os << "er_edge_prob = " << format_real(*cfg.er_edge_prob) << '\n';
  os << "alpha_legit = " << interval(cfg.alpha_legit) << '\n'
     << "alpha_malicious = " << interval(cfg.alpha_malicious) << '\n'
     << "adversary = \"inversion\"\n"
     << "max_rounds = " << cfg.max_rounds << '\n'
     << "n_trials = " << cfg.n_trials << '\n'
     << "master_seed = " << cfg.master_seed << '\n'
     << "graph_file = " << quoted(cfg.graph_file) << '\n'
     << "out_dir = " << quoted(cfg.out_dir) << '\n'
     << "skip_assumption_check = " << (cfg.skip_assumption_check ? "true" : "false") << '\n'
     << "diameter_scope = "
     << (cfg.diameter_scope == analysis::DiameterScope::FullGraph ? "\"full\"" : "\"legit\"")
     << '\n';
  return os.str();
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig4-20-cyclic", "fig4-40-cyclic", "fig4-80-cyclic", "fig4-20-er",
      "fig4-40-er",     "fig4-80-er",     "table1",         "table2-cyclic",
      "table2-er",      "fig6a-sweep",    "fig6b-sweep",    "fig5-violation"};
  return names;
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.max_rounds = 1000;
  cfg.malicious_edge_prob = 0.2;

  auto fig4 = [&](std::size_t n, GraphKind kind) {
    cfg.graph_kind = kind;
    cfg.n_legit = n;
    cfg.n_malicious = n * 3 / 2;
    cfg.n_trials = 10;
  };
  if (name == "fig4-20-cyclic") {
    fig4(20, GraphKind::Cyclic);
  } else if (name == "fig4-40-cyclic") {
    fig4(40, GraphKind::Cyclic);
  } else if (name == "fig4-80-cyclic") {
    fig4(80, GraphKind::Cyclic);
  } else if (name == "fig4-20-er") {
    fig4(20, GraphKind::ErdosRenyi);
  } else if (name == "fig4-40-er") {
    fig4(40, GraphKind::ErdosRenyi);
  } else if (name == "fig4-80-er") {
    fig4(80, GraphKind::ErdosRenyi);
  } else if (name == "table1") {
    cfg.n_trials = 1;
    for (const char* kind : {"cyclic", "erdos_renyi"}) {
      for (std::size_t n : {20, 40, 80}) {
        const std::string short_kind = std::string(kind) == "cyclic" ? "cyclic" : "er";
        cfg.variants.push_back({short_kind + "-" + std::to_string(n),
                                {{"graph_kind", kind},
                                 {"n_legit", std::to_string(n)},
                                 {"n_malicious", std::to_string(n * 3 / 2)}}});
      }
    }
  } else if (name == "table2-cyclic" || name == "table2-er") {
    cfg.graph_kind = name == "table2-cyclic" ? GraphKind::Cyclic : GraphKind::ErdosRenyi;
    cfg.n_legit = 40;
    cfg.n_malicious = 60;
    cfg.n_trials = 500;
  } else if (name == "fig6a-sweep") {
    cfg.graph_kind = GraphKind::ErdosRenyi;
    cfg.n_legit = 40;
    cfg.n_malicious = 60;
    cfg.n_trials = 10;
    for (const char* p : {"0.05", "0.1", "0.2", "0.3", "0.5"}) {
      cfg.variants.push_back({std::string("p") + p, {{"malicious_edge_prob", p}}});
    }
  } else if (name == "fig6b-sweep") {
    cfg.graph_kind = GraphKind::ErdosRenyi;
    cfg.n_legit = 40;
    cfg.n_trials = 10;
    for (std::size_t m : {20, 40, 60, 80, 100, 120}) {
      cfg.variants.push_back({"m" + std::to_string(m), {{"n_malicious", std::to_string(m)}}});
    }
  } else if (name == "fig5-violation") {
    cfg.graph_kind = GraphKind::FixtureFile;
    cfg.graph_file = "@fig5";
    cfg.n_legit = 2;
    cfg.n_malicious = 2;
    cfg.n_trials = 10;
    cfg.skip_assumption_check = true;
  } else {
    throw ConfigRejected("unknown preset '" + name + "'");
  }
  return cfg;
}

std::vector<std::pair<std::string, ExperimentConfig>> expand(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, ExperimentConfig>> out;
  if (cfg.variants.empty()) {
    out.emplace_back("", cfg);
    return out;
  }
  for (const auto& v : cfg.variants) {
    ExperimentConfig c = cfg;
    c.variants.clear();
    for (const auto& [k, val] : v.overrides) apply_setting(c, k, val);
    out.emplace_back(v.label, std::move(c));
  }
  return out;
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t trial) noexcept {
  return cfg.master_seed + trial;
}

NetworkInstance make_instance(const ExperimentConfig& cfg, std::size_t trial) {
  if (cfg.graph_kind == GraphKind::FixtureFile) return graph::load_edge_list(cfg.graph_file);
  const std::uint64_t seed = trial_seed(cfg, trial);
  graph::DirectedGraph legit;
  switch (cfg.graph_kind) {
    case GraphKind::Cyclic:
      legit = graph::build_cyclic_legit(cfg.n_legit);
      break;
    case GraphKind::ErdosRenyi:
      legit = graph::build_erdos_renyi_legit(cfg.n_legit, cfg.er_probability(),
                                             derive_seed(seed, Stream::LegitGraph));
      break;
    case GraphKind::Complete:
      legit = graph::build_complete(cfg.n_legit);
      break;
    case GraphKind::FixtureFile:
      break;
  }
  return graph::attach_malicious(legit, cfg.n_malicious, cfg.malicious_edge_prob,
                                 derive_seed(seed, Stream::Malicious));
}

protocol::TrialSpec make_trial_spec(const ExperimentConfig& cfg, std::size_t trial) {
  protocol::TrialSpec spec;
  spec.instance = make_instance(cfg, trial);
  spec.model = cfg.model();
  spec.max_rounds = cfg.max_rounds;
  spec.seed = trial_seed(cfg, trial);
  spec.skip_assumption_check = cfg.skip_assumption_check;
  return spec;
}

AggregateStats aggregate(const std::vector<TrialRecord>& trials) {
  AggregateStats s;
  s.n_trials = trials.size();
  std::vector<double> values;
  for (const auto& t : trials) {
    if (t.trace.t_hat_max) {
      values.push_back(static_cast<double>(*t.trace.t_hat_max));
    } else {
      ++s.n_missing;
    }
  }
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  s.mean = mean;
  s.std = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

std::string trace_csv(const protocol::SimulationTrace& trace) {
  std::string out = "round,mse,max_err,min_err\n";
  char buf[128];
  for (std::size_t t = 0; t < trace.mse.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", t, trace.mse[t],
                  trace.max_error[t], trace.min_error[t]);
    out += buf;
  }
  return out;
}

namespace {

template <typename T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

nlohmann::json trial_summary_json(const ExperimentConfig& cfg, const TrialRecord& trial) {
  return {{"trial", trial.index},
          {"seed", trial.seed},
          {"T_f", opt(trial.trace.t_f)},
          {"T_hat_max", opt(trial.trace.t_hat_max)},
          {"classified_ok", trial.trace.all_classified_ok()},
          {"final_round", trial.trace.final_round},
          {"n_legit", trial.n_legit},
          {"n_malicious", trial.n_malicious},
          {"graph_kind", to_string(cfg.graph_kind)}};
}

nlohmann::json aggregate_json(const ExperimentConfig& cfg, const AggregateStats& stats,
                              const std::vector<TrialRecord>& trials) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& t : trials) values.push_back(opt(t.trace.t_hat_max));
  return {{"name", cfg.name},
          {"graph_kind", to_string(cfg.graph_kind)},
          {"master_seed", cfg.master_seed},
          {"n_trials", stats.n_trials},
          {"n_missing", stats.n_missing},
          {"min", opt(stats.min)},
          {"max", opt(stats.max)},
          {"mean", opt(stats.mean)},
          {"std", opt(stats.std)},
          {"std_kind", "population"},
          {"T_hat_max", values}};
}

nlohmann::json analysis_json(const NetworkInstance& inst, const analysis::InstanceAnalysis& a) {
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : a.targets) {
    const auto& c = t.contraction;
    targets.push_back({{"q", t.q},
                       {"role", graph::to_string(t.role)},
                       {"u_q", t.u},
                       {"con", c.finite() ? nlohmann::json(*c.value) : nlohmann::json("inf")},
                       {"weakly_chained", c.finite()},
                       {"h_q", opt(t.h_q)},
                       {"bound_rounds", opt(t.bound_rounds)}});
  }
  nlohmann::json con_max = a.con_max_infinite ? nlohmann::json("inf") : opt(a.con_max);
  return {{"targets", targets},
          {"instance",
           {{"con_max", con_max},
            {"l_G", opt(a.diameter)},
            {"deg_max", a.deg_max},
            {"h", opt(a.h)},
            {"Delta", opt(a.delta)},
            {"diameter_scope",
             a.scope == analysis::DiameterScope::FullGraph ? "full" : "legit"},
            {"n_legit", inst.legitimate().size()},
            {"n_malicious", inst.malicious().size()}}}};
}

nlohmann::json assumption_json(const graph::AssumptionReport& report) {
  return {{"legit_subgraph_strongly_connected", report.legit_subgraph_strongly_connected},
          {"every_malicious_observed", report.every_malicious_observed},
          {"violating_malicious_nodes", report.violating_malicious_nodes},
          {"ok", report.ok()}};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& dir,
                                const RunOptions& options) {
  if (!cfg.variants.empty()) {
    throw ConfigRejected("run_experiment needs a concrete config; expand variants first");
  }
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;
  result.trials.resize(cfg.n_trials);

  // Instances are checked up front so a rejected config fails before any work.
  std::vector<protocol::TrialSpec> specs;
  specs.reserve(cfg.n_trials);
  for (std::size_t k = 0; k < cfg.n_trials; ++k) {
    specs.push_back(make_trial_spec(cfg, k));
    if (!cfg.skip_assumption_check) {
      const auto report = graph::verify_assumptions(specs.back().instance);
      if (!report.ok()) {
        throw ConfigRejected("trial " + std::to_string(k) +
                             " instance violates the connectivity assumptions");
      }
    }
  }

  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, cfg.n_trials);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cfg.n_trials);
  auto worker = [&] {
    for (std::size_t k = next++; k < cfg.n_trials; k = next++) {
      try {
        TrialRecord rec;
        rec.index = k;
        rec.seed = specs[k].seed;
        rec.n_legit = specs[k].instance.legitimate().size();
        rec.n_malicious = specs[k].instance.malicious().size();
        rec.trace = protocol::run_trial(specs[k]);
        result.trials[k] = std::move(rec);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.stats = aggregate(result.trials);

  if (options.write_files) {
    const fs::path out(dir);
    fs::create_directories(out);
    for (const auto& t : result.trials) {
      const std::string stem = "trial_" + std::to_string(t.index);
      write_text(out / (stem + ".csv"), trace_csv(t.trace));
      write_text(out / (stem + ".json"), trial_summary_json(cfg, t).dump(2) + "\n");
    }
    write_text(out / "aggregate.json", aggregate_json(cfg, result.stats, result.trials).dump(2) + "\n");
    const auto& inst0 = specs.front().instance;
    write_text(out / "analysis.json",
               analysis_json(inst0, analysis::analyze_instance(inst0, cfg.diameter_scope)).dump(2) +
                   "\n");
    write_text(out / "config.toml", to_config_text(cfg));
  }
  return result;
}

std::vector<ExperimentResult> run_all(const ExperimentConfig& cfg, const RunOptions& options) {
  std::vector<ExperimentResult> results;
  const fs::path base = fs::path(cfg.out_dir) / cfg.name;
  for (const auto& [label, concrete] : expand(cfg)) {
    const fs::path dir = label.empty() ? base : base / label;
    results.push_back(run_experiment(concrete, dir.string(), options));
  }
  return results;
}

std::vector<Table1Row> emit_table1(const std::vector<ExperimentConfig>& configs) {
  std::vector<Table1Row> rows;
  for (const auto& cfg : configs) {
    cfg.validate();
    Table1Row row;
    row.label = cfg.name;
    row.graph_kind = cfg.graph_kind;
    const auto spec = make_trial_spec(cfg, 0);
    row.n_legit = spec.instance.legitimate().size();
    row.n_malicious = spec.instance.malicious().size();
    row.t_hat_max = protocol::run_trial(spec).t_hat_max;
    const auto a = analysis::analyze_instance(spec.instance, cfg.diameter_scope);
    row.con_max = a.con_max;
    row.con_max_infinite = a.con_max_infinite;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %-12s %6s %6s %10s %8s\n", "setup", "graph", "|L|", "|M|",
                "T_hat_max", "con_max");
  os << buf;
  for (const auto& r : rows) {
    const std::string t = r.t_hat_max ? std::to_string(*r.t_hat_max) : "none";
    const std::string c = r.con_max_infinite ? "inf"
                          : r.con_max       ? std::to_string(*r.con_max)
                                            : "n/a";
    std::snprintf(buf, sizeof buf, "%-16s %-12s %6zu %6zu %10s %8s\n", r.label.c_str(),
                  to_string(r.graph_kind), r.n_legit, r.n_malicious, t.c_str(), c.c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace dtrust::experiments
