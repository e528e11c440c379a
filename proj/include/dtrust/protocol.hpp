#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dtrust/graph.hpp"
#include "dtrust/observation.hpp"
#include "dtrust/random.hpp"

namespace dtrust::protocol {

using graph::NodeId;

/// Row i holds agent i's opinion vector o_i over all N agents.
class OpinionMatrix {
 public:
  OpinionMatrix() = default;
  explicit OpinionMatrix(std::size_t n, double fill = 1.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  std::span<double> row(NodeId i) { return {data_.data() + std::size_t{i} * n_, n_}; }
  std::span<const double> row(NodeId i) const { return {data_.data() + std::size_t{i} * n_, n_}; }
  double operator()(NodeId i, NodeId q) const { return data_[std::size_t{i} * n_ + q]; }
  double& operator()(NodeId i, NodeId q) { return data_[std::size_t{i} * n_ + q]; }

  friend bool operator==(const OpinionMatrix&, const OpinionMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Running state of one legitimate agent.
struct AgentState {
  NodeId id = 0;
  std::vector<NodeId> in_neighbors;  // sorted, includes id
  std::vector<double> beta;          // aligned with in_neighbors; the self entry stays 1
  std::vector<double> opinion;       // o_i, one entry per agent

  // beta = 0 for every in-neighbor except self, opinion all ones.
  static AgentState initial(const graph::DirectedGraph& g, NodeId id);

  double beta_of(NodeId j) const;
  bool observes(NodeId j) const;
};

// beta_ij += alpha_ij - 1/2 for every non-self in-neighbor. The map must cover
// exactly N_i^in \ {i}; anything else is a ProtocolViolation.
void update_beta(AgentState& state, const std::map<NodeId, double>& alpha);

// In-neighbors with beta >= 0, sorted. Always contains the agent itself.
std::vector<NodeId> trusted_in_neighbors(const AgentState& state);

/// Opinion update from the previous round's opinion vectors.
///
/// Entries for in-neighbors follow the sign of beta (1 when beta >= 0, else 0).
/// Every other entry is the uniform average of the trusted in-neighbors'
/// previous opinions, summed in ascending id order.
void update_opinions(AgentState& state, const OpinionMatrix& previous);

struct AdversaryPolicy {
  enum class Kind { Inversion, Custom };
  using Emitter = std::function<std::vector<double>(std::size_t round)>;

  Kind kind = Kind::Inversion;
  Emitter emit;

  static AdversaryPolicy inversion() { return {}; }
  static AdversaryPolicy custom(Emitter e) { return {Kind::Custom, std::move(e)}; }
};

// Inversion reports 1 for malicious agents and 0 for legitimate ones. Custom
// vectors are clamped to [0, 1] and must have one entry per agent.
std::vector<double> adversary_emit(const AdversaryPolicy& policy,
                                   const graph::NetworkInstance& inst, std::size_t round);

struct ErrorSummary {
  double mse = 0.0;        // mean over legitimate agents of the per-agent MSE
  double max_error = 0.0;  // largest per-agent MSE
  double min_error = 0.0;  // smallest per-agent MSE
};

ErrorSummary error_summary(const graph::NetworkInstance& inst, const OpinionMatrix& opinions);

bool classified_correctly(const graph::NetworkInstance& inst, NodeId i, NodeId q, double opinion);

struct SimulationTrace {
  std::vector<double> mse;  // index = round
  std::vector<double> max_error;
  std::vector<double> min_error;
  std::optional<std::size_t> t_f;
  std::optional<std::size_t> t_hat_max;
  std::size_t final_round = 0;
  std::size_t n_legit = 0;
  std::size_t n_agents = 0;
  // Row-major |L| x N; entry (k, q) refers to the k-th legitimate agent.
  std::vector<char> final_classification;

  bool classified(std::size_t legit_index, NodeId q) const {
    return final_classification.at(legit_index * n_agents + q) != 0;
  }
  bool all_classified_ok() const;

  friend bool operator==(const SimulationTrace&, const SimulationTrace&) = default;
};

struct TrialSpec {
  graph::NetworkInstance instance;
  observation::TrustObservationModel model;
  AdversaryPolicy adversary = AdversaryPolicy::inversion();
  std::size_t max_rounds = 1000;
  std::uint64_t seed = 0;
  // Rounds of unbroken correct classification needed to fix T_hat_max; N when unset.
  std::optional<std::size_t> streak_length;
  bool skip_assumption_check = false;
};

/// Synchronous round engine for one trial.
///
/// Round 0 is the initial state: legitimate opinions all ones, beta all zero,
/// malicious rows set by the adversary. Each step() advances one round.
class Simulation {
 public:
  explicit Simulation(TrialSpec spec);

  void step();

  std::size_t round() const noexcept { return round_; }
  const graph::NetworkInstance& instance() const noexcept { return spec_.instance; }
  const OpinionMatrix& opinions() const noexcept { return opinions_; }
  // k-th legitimate agent, in ascending id order.
  const AgentState& agent(std::size_t legit_index) const { return agents_.at(legit_index); }

  // Every legitimate agent currently trusts exactly its legitimate in-neighbors.
  bool signs_correct() const noexcept { return signs_correct_; }
  bool all_classified_correctly() const noexcept { return all_correct_; }

  // Retrospective estimate: one past the last round whose beta signs were wrong.
  std::size_t t_f_estimate() const noexcept { return last_bad_round_ ? *last_bad_round_ + 1 : 0; }
  std::optional<std::size_t> t_hat_max() const noexcept { return t_hat_max_; }
  bool finished() const noexcept { return t_hat_max_.has_value(); }

  SimulationTrace trace() const;

 private:
  void record_metrics();

  TrialSpec spec_;
  std::size_t streak_target_;
  std::size_t round_ = 0;
  std::vector<AgentState> agents_;
  std::vector<Rng> rngs_;
  OpinionMatrix opinions_;
  std::vector<double> mse_, max_err_, min_err_;
  bool signs_correct_ = false;
  bool all_correct_ = false;
  std::optional<std::size_t> last_bad_round_;
  std::optional<std::size_t> streak_start_;
  std::size_t streak_len_ = 0;
  std::optional<std::size_t> t_hat_max_;
};

using RoundObserver = std::function<void(const Simulation&)>;

// Runs until T_hat_max is fixed or max_rounds have elapsed. Throws ConfigRejected
// when the instance violates the connectivity assumptions and the check is not skipped.
SimulationTrace run_trial(const TrialSpec& spec, const RoundObserver& observer = {});

}  // namespace dtrust::protocol
