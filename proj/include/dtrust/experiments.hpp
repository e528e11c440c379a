#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dtrust/analysis.hpp"
#include "dtrust/graph.hpp"
#include "dtrust/observation.hpp"
#include "dtrust/protocol.hpp"

namespace dtrust::experiments {

enum class GraphKind { Cyclic, ErdosRenyi, Complete, FixtureFile };

const char* to_string(GraphKind kind) noexcept;
GraphKind parse_graph_kind(const std::string& text);

// A named set of key/value overrides applied on top of a base config.
struct Variant {
  std::string label;
  std::map<std::string, std::string> overrides;
};

struct ExperimentConfig {
  std::string name = "custom";
  GraphKind graph_kind = GraphKind::Cyclic;
  std::size_t n_legit = 40;
  std::size_t n_malicious = 60;
  double malicious_edge_prob = 0.2;
  // Legitimate ER edge probability; 2 ln(n)/n when unset.
  std::optional<double> er_edge_prob;
  observation::Interval alpha_legit{0.35, 0.75};
  observation::Interval alpha_malicious{0.25, 0.65};
  std::size_t max_rounds = 1000;
  std::size_t n_trials = 1;
  std::uint64_t master_seed = 1;
  // Edge-list path for graph_kind = fixture_file; "@fig5" names the built-in fixture.
  std::string graph_file;
  std::string out_dir = "out";
  bool skip_assumption_check = false;
  analysis::DiameterScope diameter_scope = analysis::DiameterScope::LegitimateSubgraph;
  std::vector<Variant> variants;

  // Throws ConfigRejected on out-of-range values.
  void validate() const;
  observation::TrustObservationModel model() const;
  double er_probability() const;
};

// Keys accepted by apply_setting, in the order to_config_text writes them.
const std::vector<std::string>& config_keys();

// Sets one field from its textual value (TOML scalar or two-element array).
// Throws ConfigRejected for unknown keys or malformed values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Flat `key = value` text, '#' comments, TOML-compatible scalars and arrays.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
std::string to_config_text(const ExperimentConfig& cfg);

const std::vector<std::string>& preset_names();
// Throws ConfigRejected for unknown names.
ExperimentConfig preset(const std::string& name);

// One concrete configuration per variant (or the config itself when it has none),
// paired with the output subdirectory label ("" for no variants).
std::vector<std::pair<std::string, ExperimentConfig>> expand(const ExperimentConfig& cfg);

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t trial) noexcept;

// The random instance for trial k.
graph::NetworkInstance make_instance(const ExperimentConfig& cfg, std::size_t trial);

protocol::TrialSpec make_trial_spec(const ExperimentConfig& cfg, std::size_t trial);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t n_legit = 0;
  std::size_t n_malicious = 0;
  protocol::SimulationTrace trace;
};

struct AggregateStats {
  std::size_t n_trials = 0;
  std::size_t n_missing = 0;  // trials without T_hat_max
  std::optional<double> min, max, mean, std;  // population std
};

AggregateStats aggregate(const std::vector<TrialRecord>& trials);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  AggregateStats stats;
};

struct RunOptions {
  bool write_files = true;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

/// Runs every trial of a concrete (variant-free) config.
///
/// Trials run on a worker pool; results are collected by trial index so the
/// output does not depend on scheduling. Writes trial_<k>.csv/.json,
/// aggregate.json and analysis.json under `dir` when write_files is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& dir,
                                const RunOptions& options = {});

// Runs all variants of cfg under cfg.out_dir/<cfg.name>[/<label>].
std::vector<ExperimentResult> run_all(const ExperimentConfig& cfg, const RunOptions& options = {});

std::string trace_csv(const protocol::SimulationTrace& trace);
nlohmann::json trial_summary_json(const ExperimentConfig& cfg, const TrialRecord& trial);
nlohmann::json aggregate_json(const ExperimentConfig& cfg, const AggregateStats& stats,
                              const std::vector<TrialRecord>& trials);
nlohmann::json analysis_json(const graph::NetworkInstance& inst,
                             const analysis::InstanceAnalysis& result);
nlohmann::json assumption_json(const graph::AssumptionReport& report);

struct Table1Row {
  std::string label;
  GraphKind graph_kind = GraphKind::Cyclic;
  std::size_t n_legit = 0;
  std::size_t n_malicious = 0;
  std::optional<std::size_t> t_hat_max;
  std::optional<std::size_t> con_max;  // empty when every C_q is empty
  bool con_max_infinite = false;
};

// One seeded trial (sub-seed 0) and the static con_max for each config.
std::vector<Table1Row> emit_table1(const std::vector<ExperimentConfig>& configs);
std::string format_table1(const std::vector<Table1Row>& rows);

}  // namespace dtrust::experiments
