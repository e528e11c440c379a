#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtrust/analysis.hpp"
#include "dtrust/error.hpp"
#include "dtrust/experiments.hpp"
#include "dtrust/graph.hpp"

namespace fs = std::filesystem;
namespace ex = dtrust::experiments;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitRejected = 2;

struct ConfigFlags {
  std::string preset;
  std::string config_file;
  std::map<std::string, std::string> overrides;
  std::optional<std::string> seed, trials, out;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_file, "flat key = value config file");
  for (const auto& key : ex::config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key, [&flags, key](const std::string& v) { flags.overrides[key] = v; },
        "override config key " + key);
  }
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--trials", flags.trials, "number of trials");
  cmd->add_option("--out", flags.out, "output root directory");
}

// preset, then config file, then individual flags.
ex::ExperimentConfig resolve_config(const ConfigFlags& flags) {
  ex::ExperimentConfig cfg = flags.preset.empty() ? ex::ExperimentConfig{} : ex::preset(flags.preset);
  if (!flags.config_file.empty()) cfg = ex::load_config(flags.config_file, cfg);
  for (const auto& [k, v] : flags.overrides) ex::apply_setting(cfg, k, v);
  if (flags.seed) ex::apply_setting(cfg, "master_seed", *flags.seed);
  if (flags.trials) ex::apply_setting(cfg, "n_trials", *flags.trials);
  if (flags.out) ex::apply_setting(cfg, "out_dir", *flags.out);
  return cfg;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw dtrust::Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

int cmd_simulate(const ConfigFlags& flags, const std::string& dump_graph, std::size_t threads) {
  const auto cfg = resolve_config(flags);
  const auto concrete = ex::expand(cfg);
  for (const auto& [label, c] : concrete) c.validate();
  if (!dump_graph.empty()) {
    dtrust::graph::save_edge_list(dump_graph, ex::make_instance(concrete.front().second, 0));
  }
  ex::RunOptions opts;
  opts.threads = threads;
  const auto results = ex::run_all(cfg, opts);
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& s = results[k].stats;
    const std::string label = concrete[k].first.empty() ? cfg.name : cfg.name + "/" + concrete[k].first;
    std::printf("%-28s trials=%zu missing=%zu", label.c_str(), s.n_trials, s.n_missing);
    if (s.mean) std::printf(" T_hat_max mean=%.2f std=%.2f min=%.0f max=%.0f", *s.mean, *s.std, *s.min, *s.max);
    std::printf("\n");
  }
  if (cfg.name == "table1") {
    std::vector<ex::ExperimentConfig> configs;
    for (auto [label, c] : concrete) {
      c.name = label;
      configs.push_back(std::move(c));
    }
    const std::string table = ex::format_table1(ex::emit_table1(configs));
    std::cout << table;
    std::ofstream(fs::path(cfg.out_dir) / cfg.name / "table1.txt") << table;
  }
  return 0;
}

int cmd_analyze(const std::string& graph_file, const ConfigFlags& flags, const std::string& out,
                const std::string& dump_graph) {
  if (graph_file.empty() == flags.preset.empty()) {
    throw dtrust::ConfigRejected("analyze needs exactly one of --graph or --preset");
  }
  auto scope_of = [](const ex::ExperimentConfig& c) { return c.diameter_scope; };
  if (!graph_file.empty()) {
    const auto cfg = resolve_config(flags);
    const auto inst = dtrust::graph::load_edge_list(graph_file);
    if (!dump_graph.empty()) dtrust::graph::save_edge_list(dump_graph, inst);
    write_json(ex::analysis_json(inst, dtrust::analysis::analyze_instance(inst, scope_of(cfg))), out);
    return 0;
  }
  const auto cfg = resolve_config(flags);
  const auto concrete = ex::expand(cfg);
  nlohmann::json result;
  for (const auto& [label, c] : concrete) {
    c.validate();
    const auto inst = ex::make_instance(c, 0);
    auto j = ex::analysis_json(inst, dtrust::analysis::analyze_instance(inst, scope_of(c)));
    if (label.empty()) {
      result = std::move(j);
    } else {
      result[label] = std::move(j);
    }
  }
  if (!dump_graph.empty()) {
    dtrust::graph::save_edge_list(dump_graph, ex::make_instance(concrete.front().second, 0));
  }
  write_json(result, out);
  return 0;
}

int cmd_verify(const std::string& graph_file) {
  const auto inst = dtrust::graph::load_edge_list(graph_file);
  const auto report = dtrust::graph::verify_assumptions(inst);
  std::cout << ex::assumption_json(report).dump(2) << '\n';
  return report.ok() ? 0 : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed trust learning simulator"};
  app.require_subcommand(1);

  ConfigFlags sim_flags, ana_flags;
  std::string sim_dump, ana_dump, ana_graph, ana_out, verify_graph;
  std::size_t threads = 0;

  auto* sim = app.add_subcommand("simulate", "run a preset or config");
  sim->add_option("--preset", sim_flags.preset, "preset name")
      ->check(CLI::IsMember(ex::preset_names()));
  add_config_flags(sim, sim_flags);
  sim->add_option("--dump-graph", sim_dump, "write the trial-0 instance as an edge list");
  sim->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* ana = app.add_subcommand("analyze", "static contraction analysis of an instance");
  ana->add_option("--graph", ana_graph, "edge-list file");
  ana->add_option("--preset", ana_flags.preset, "preset name (trial-0 instance)")
      ->check(CLI::IsMember(ex::preset_names()));
  add_config_flags(ana, ana_flags);
  ana->add_option("--json", ana_out, "write JSON here instead of stdout");
  ana->add_option("--dump-graph", ana_dump, "write the analysed instance as an edge list");

  auto* ver = app.add_subcommand("verify", "check the connectivity assumptions");
  ver->add_option("--graph", verify_graph, "edge-list file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitRejected;
  }

  try {
    if (*sim) return cmd_simulate(sim_flags, sim_dump, threads);
    if (*ana) return cmd_analyze(ana_graph, ana_flags, ana_out, ana_dump);
    if (*ver) return cmd_verify(verify_graph);
  } catch (const dtrust::ConfigRejected& e) {
    std::cerr << "config rejected: " << e.what() << '\n';
    return kExitRejected;
  } catch (const dtrust::ParseError& e) {
    std::cerr << "config rejected: " << e.what() << '\n';
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
