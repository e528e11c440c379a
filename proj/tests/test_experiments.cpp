#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtrust/error.hpp"
#include "dtrust/experiments.hpp"

using namespace dtrust;
using namespace dtrust::experiments;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dtrust_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.name = "small";
  c.graph_kind = GraphKind::ErdosRenyi;
  c.n_legit = 10;
  c.n_malicious = 15;
  c.n_trials = 6;
  c.master_seed = 17;
  return c;
}

}  // namespace

TEST(Presets, AllNamesResolveAndValidate) {
  for (const auto& name : preset_names()) {
    const auto cfg = preset(name);
    EXPECT_EQ(cfg.name, name);
    for (const auto& [label, c] : expand(cfg)) EXPECT_NO_THROW(c.validate()) << name << "/" << label;
  }
  EXPECT_THROW(preset("fig9"), ConfigRejected);
}

TEST(Presets, Fig4Sizes) {
  const auto c = preset("fig4-20-cyclic");
  EXPECT_EQ(c.n_legit, 20u);
  EXPECT_EQ(c.n_malicious, 30u);
  EXPECT_EQ(c.graph_kind, GraphKind::Cyclic);
  EXPECT_EQ(preset("fig4-80-er").n_malicious, 120u);
}

TEST(Presets, Fig6bHoldsEdgeProbability) {
  const auto c = preset("fig6b-sweep");
  const auto runs = expand(c);
  ASSERT_EQ(runs.size(), 6u);
  for (const auto& [label, r] : runs) EXPECT_EQ(r.malicious_edge_prob, 0.2);
  EXPECT_EQ(runs.back().second.n_malicious, 120u);
}

TEST(Presets, Fig6aSweepsEdgeProbability) {
  const auto runs = expand(preset("fig6a-sweep"));
  ASSERT_EQ(runs.size(), 5u);
  EXPECT_EQ(runs.front().second.malicious_edge_prob, 0.05);
  EXPECT_EQ(runs.back().second.malicious_edge_prob, 0.5);
}

TEST(Presets, Fig5FixtureViolatesAssumptions) {
  const auto c = preset("fig5-violation");
  EXPECT_TRUE(c.skip_assumption_check);
  const auto report = graph::verify_assumptions(make_instance(c, 0));
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.violating_malicious_nodes, std::vector<graph::NodeId>{2});
}

TEST(Presets, Table2) {
  const auto c = preset("table2-cyclic");
  EXPECT_EQ(c.n_trials, 500u);
  EXPECT_EQ(c.n_legit, 40u);
  EXPECT_EQ(c.n_malicious, 60u);
}

TEST(Config, ParsesTomlStyleText) {
  const auto c = parse_config(R"(# comment
name = "mine"
graph_kind = "erdos_renyi"
n_legit = 12   # trailing comment
n_malicious = 18
malicious_edge_prob = 0.3
alpha_legit = [0.4, 0.8]
alpha_malicious = [0.2, 0.6]
max_rounds = 500
n_trials = 3
master_seed = 99
skip_assumption_check = false
diameter_scope = "full"
)");
  EXPECT_EQ(c.name, "mine");
  EXPECT_EQ(c.graph_kind, GraphKind::ErdosRenyi);
  EXPECT_EQ(c.n_legit, 12u);
  EXPECT_EQ(c.malicious_edge_prob, 0.3);
  EXPECT_EQ(c.alpha_legit.lo, 0.4);
  EXPECT_EQ(c.alpha_malicious.hi, 0.6);
  EXPECT_EQ(c.max_rounds, 500u);
  EXPECT_EQ(c.master_seed, 99u);
  EXPECT_EQ(c.diameter_scope, analysis::DiameterScope::FullGraph);
}

TEST(Config, RoundTrip) {
  auto c = small_config();
  c.er_edge_prob = 0.4;
  c.alpha_legit = {0.5, 0.9};
  const auto back = parse_config(to_config_text(c));
  EXPECT_EQ(to_config_text(back), to_config_text(c));
  EXPECT_EQ(back.er_edge_prob, std::optional<double>(0.4));
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("bogus = 1\n"), ConfigRejected);
  EXPECT_THROW(parse_config("n_legit = -3\n"), ConfigRejected);
  EXPECT_THROW(parse_config("n_legit\n"), ConfigRejected);
  EXPECT_THROW(parse_config("alpha_legit = [0.4]\n"), ConfigRejected);
  EXPECT_THROW(parse_config("graph_kind = \"torus\"\n"), ConfigRejected);
  EXPECT_THROW(parse_config("adversary = \"sneaky\"\n"), ConfigRejected);
  EXPECT_THROW(parse_config("alpha_legit = [0.3, 0.6]\n").validate(), ConfigRejected);
  EXPECT_THROW(parse_config("n_trials = 0\n").validate(), ConfigRejected);
  EXPECT_THROW(parse_config("max_rounds = 0\n").validate(), ConfigRejected);
  EXPECT_THROW(load_config("/nonexistent/cfg.toml"), ConfigRejected);
}

TEST(Config, EveryKeyIsSettable) {
  const std::map<std::string, std::string> values = {
      {"name", "\"x\""},          {"graph_kind", "cyclic"},     {"n_legit", "5"},
      {"n_malicious", "2"},       {"malicious_edge_prob", "0.5"}, {"er_edge_prob", "0.3"},
      {"alpha_legit", "[0.5, 0.9]"}, {"alpha_malicious", "[0.1, 0.5]"}, {"adversary", "inversion"},
      {"max_rounds", "7"},        {"n_trials", "2"},            {"master_seed", "3"},
      {"graph_file", "g.edges"},  {"out_dir", "o"},             {"skip_assumption_check", "true"},
      {"diameter_scope", "legit"}};
  for (const auto& key : config_keys()) {
    ExperimentConfig c;
    ASSERT_TRUE(values.count(key)) << key;
    EXPECT_NO_THROW(apply_setting(c, key, values.at(key))) << key;
  }
}

TEST(Seeds, TrialSeedIsMasterPlusIndex) {
  auto c = small_config();
  EXPECT_EQ(trial_seed(c, 0), 17u);
  EXPECT_EQ(trial_seed(c, 4), 21u);
  EXPECT_EQ(make_instance(c, 2), make_instance(c, 2));
  EXPECT_FALSE(make_instance(c, 2) == make_instance(c, 3));
}

TEST(Seeds, CyclicLegitPartIsFixed) {
  auto c = preset("table2-cyclic");
  const auto a = make_instance(c, 0), b = make_instance(c, 1);
  for (graph::NodeId i = 0; i < 40; ++i) {
    for (graph::NodeId j = 0; j < 40; ++j) EXPECT_EQ(a.graph().has_edge(i, j), b.graph().has_edge(i, j));
  }
  EXPECT_FALSE(a == b);
}

TEST(Run, RejectsViolatingInstance) {
  auto c = preset("fig5-violation");
  c.skip_assumption_check = false;
  EXPECT_THROW(run_experiment(c, "", {false, 1}), ConfigRejected);
}

TEST(Run, CompleteWithoutMaliciousHasTHatMaxEqualTf) {
  ExperimentConfig c;
  c.graph_kind = GraphKind::Complete;
  c.n_legit = 8;
  c.n_malicious = 0;
  c.n_trials = 1;
  const auto r = run_experiment(c, "", {false, 1});
  const auto j = trial_summary_json(c, r.trials[0]);
  EXPECT_EQ(j["T_hat_max"], j["T_f"]);
  EXPECT_TRUE(j["classified_ok"].get<bool>());
}

TEST(Run, WritesLayoutAndIsReproducible) {
  const auto c = small_config();
  const auto d1 = scratch("a"), d2 = scratch("b");
  run_experiment(c, d1.string(), {true, 3});
  run_experiment(c, d2.string(), {true, 1});
  for (std::size_t k = 0; k < c.n_trials; ++k) {
    for (const char* ext : {".csv", ".json"}) {
      const std::string f = "trial_" + std::to_string(k) + ext;
      ASSERT_TRUE(fs::exists(d1 / f)) << f;
      EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
    }
  }
  for (const char* f : {"aggregate.json", "analysis.json"}) {
    ASSERT_TRUE(fs::exists(d1 / f));
    EXPECT_EQ(slurp(d1 / f), slurp(d2 / f));
  }
  EXPECT_EQ(slurp(d1 / "trial_0.csv").substr(0, 26), "round,mse,max_err,min_err\n");

  // Aggregate recomputed from the per-trial files.
  std::vector<double> v;
  for (std::size_t k = 0; k < c.n_trials; ++k) {
    const auto j = nlohmann::json::parse(slurp(d1 / ("trial_" + std::to_string(k) + ".json")));
    for (const char* key : {"seed", "T_f", "T_hat_max", "classified_ok", "n_legit", "n_malicious", "graph_kind"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), 17 + k);
    v.push_back(j["T_hat_max"].get<double>());
  }
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const auto agg = nlohmann::json::parse(slurp(d1 / "aggregate.json"));
  EXPECT_EQ(agg["mean"].get<double>(), mean);
  EXPECT_EQ(agg["std"].get<double>(), std::sqrt(var / static_cast<double>(v.size())));
  EXPECT_EQ(agg["min"].get<double>(), *std::min_element(v.begin(), v.end()));
  EXPECT_EQ(agg["max"].get<double>(), *std::max_element(v.begin(), v.end()));
  EXPECT_LE(agg["min"].get<double>(), agg["mean"].get<double>());
  EXPECT_LE(agg["mean"].get<double>(), agg["max"].get<double>());

  const auto an = nlohmann::json::parse(slurp(d1 / "analysis.json"));
  for (const char* key : {"con_max", "l_G", "deg_max", "h", "Delta"}) EXPECT_TRUE(an["instance"].contains(key));
  for (const char* key : {"q", "role", "u_q", "con", "weakly_chained", "h_q", "bound_rounds"}) {
    EXPECT_TRUE(an["targets"][0].contains(key)) << key;
  }
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST(Run, VariantsGoToSubdirectories) {
  auto c = preset("fig6a-sweep");
  c.n_legit = 8;
  c.n_malicious = 6;
  c.n_trials = 2;
  const auto root = scratch("variants");
  c.out_dir = root.string();
  const auto results = run_all(c, {true, 2});
  EXPECT_EQ(results.size(), 5u);
  EXPECT_TRUE(fs::exists(root / "fig6a-sweep" / "p0.05" / "aggregate.json"));
  EXPECT_TRUE(fs::exists(root / "fig6a-sweep" / "p0.5" / "trial_1.csv"));
  fs::remove_all(root);
}

TEST(Aggregate, MissingTrialsCounted) {
  std::vector<TrialRecord> t(3);
  t[0].trace.t_hat_max = 10;
  t[2].trace.t_hat_max = 20;
  const auto s = aggregate(t);
  EXPECT_EQ(s.n_trials, 3u);
  EXPECT_EQ(s.n_missing, 1u);
  EXPECT_EQ(s.mean, std::optional<double>(15.0));
  EXPECT_EQ(s.std, std::optional<double>(5.0));
  EXPECT_FALSE(aggregate({}).mean);
}

TEST(Table1, CompleteGraphRendersNotApplicable) {
  ExperimentConfig c;
  c.name = "complete";
  c.graph_kind = GraphKind::Complete;
  c.n_legit = 6;
  c.n_malicious = 0;
  const auto rows = emit_table1({c});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].con_max);
  EXPECT_NE(format_table1(rows).find("n/a"), std::string::npos);
}

TEST(Table1, CyclicTwenty) {
  auto c = preset("fig4-20-cyclic");
  const auto rows = emit_table1({c});
  ASSERT_TRUE(rows[0].con_max);
  EXPECT_TRUE(rows[0].t_hat_max);
  EXPECT_GE(*rows[0].con_max, 17u);
  EXPECT_LE(*rows[0].con_max, 19u);
}
