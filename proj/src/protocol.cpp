#include "dtrust/protocol.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "dtrust/error.hpp"

namespace dtrust::protocol {

using graph::NetworkInstance;
using graph::Role;

AgentState AgentState::initial(const graph::DirectedGraph& g, NodeId id) {
  AgentState s;
  s.id = id;
  const auto in = g.in_neighbors(id);
  s.in_neighbors.assign(in.begin(), in.end());
  s.beta.assign(in.size(), 0.0);
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (in[k] == id) s.beta[k] = 1.0;
  }
  s.opinion.assign(g.node_count(), 1.0);
  return s;
}

double AgentState::beta_of(NodeId j) const {
  auto it = std::lower_bound(in_neighbors.begin(), in_neighbors.end(), j);
  if (it == in_neighbors.end() || *it != j) {
    throw ProtocolViolation("agent " + std::to_string(id) + " has no in-neighbor " +
                            std::to_string(j));
  }
  return beta[static_cast<std::size_t>(it - in_neighbors.begin())];
}

bool AgentState::observes(NodeId j) const {
  return std::binary_search(in_neighbors.begin(), in_neighbors.end(), j);
}

void update_beta(AgentState& state, const std::map<NodeId, double>& alpha) {
  for (const auto& [j, value] : alpha) {
    if (j == state.id || !state.observes(j)) {
      throw ProtocolViolation("observation of " + std::to_string(j) + " reported to agent " +
                              std::to_string(state.id) + ", which does not receive from it");
    }
    (void)value;
  }
  if (alpha.size() + 1 != state.in_neighbors.size()) {
    throw ProtocolViolation("agent " + std::to_string(state.id) +
                            " needs one observation per in-neighbor");
  }
  for (std::size_t k = 0; k < state.in_neighbors.size(); ++k) {
    const NodeId j = state.in_neighbors[k];
    if (j == state.id) continue;
    state.beta[k] += alpha.at(j) - 0.5;
  }
}

std::vector<NodeId> trusted_in_neighbors(const AgentState& state) {
  std::vector<NodeId> trusted;
  for (std::size_t k = 0; k < state.in_neighbors.size(); ++k) {
    if (state.beta[k] >= 0.0) trusted.push_back(state.in_neighbors[k]);
  }
  return trusted;
}

void update_opinions(AgentState& state, const OpinionMatrix& previous) {
  const std::size_t n = previous.size();
  if (state.opinion.size() != n) {
    throw ProtocolViolation("opinion vector size does not match the network");
  }
  std::vector<double> sum(n, 0.0);
  std::size_t count = 0;
  for (std::size_t k = 0; k < state.in_neighbors.size(); ++k) {
    if (state.beta[k] < 0.0) continue;
    const auto row = previous.row(state.in_neighbors[k]);
    for (std::size_t q = 0; q < n; ++q) sum[q] += row[q];
    ++count;
  }
  // The self entry keeps beta at 1, so the trusted set cannot be empty.
  assert(count > 0);
  const auto denom = static_cast<double>(count);
  for (std::size_t q = 0; q < n; ++q) state.opinion[q] = sum[q] / denom;
  for (std::size_t k = 0; k < state.in_neighbors.size(); ++k) {
    state.opinion[state.in_neighbors[k]] = state.beta[k] >= 0.0 ? 1.0 : 0.0;
  }
}

std::vector<double> adversary_emit(const AdversaryPolicy& policy, const NetworkInstance& inst,
                                   std::size_t round) {
  const std::size_t n = inst.node_count();
  if (policy.kind == AdversaryPolicy::Kind::Inversion) {
    std::vector<double> v(n, 0.0);
    for (NodeId m : inst.malicious()) v[m] = 1.0;
    return v;
  }
  if (!policy.emit) throw InvalidArgument("custom adversary has no emitter");
  std::vector<double> v = policy.emit(round);
  if (v.size() != n) {
    throw ProtocolViolation("custom adversary emitted " + std::to_string(v.size()) +
                            " entries for " + std::to_string(n) + " agents");
  }
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return v;
}

bool classified_correctly(const NetworkInstance& inst, NodeId, NodeId q, double opinion) {
  return (opinion >= 0.5) == inst.is_legitimate(q);
}

ErrorSummary error_summary(const NetworkInstance& inst, const OpinionMatrix& opinions) {
  const std::size_t n = inst.node_count();
  ErrorSummary s;
  bool first = true;
  for (NodeId i : inst.legitimate()) {
    const auto row = opinions.row(i);
    double acc = 0.0;
    for (NodeId q = 0; q < n; ++q) {
      const double d = row[q] - (inst.is_legitimate(q) ? 1.0 : 0.0);
      acc += d * d;
    }
    const double e = acc / static_cast<double>(n);
    s.mse += e;
    s.max_error = first ? e : std::max(s.max_error, e);
    s.min_error = first ? e : std::min(s.min_error, e);
    first = false;
  }
  s.mse /= static_cast<double>(inst.legitimate().size());
  return s;
}

bool SimulationTrace::all_classified_ok() const {
  return std::all_of(final_classification.begin(), final_classification.end(),
                     [](char c) { return c != 0; });
}

Simulation::Simulation(TrialSpec spec)
    : spec_(std::move(spec)),
      streak_target_(spec_.streak_length.value_or(spec_.instance.node_count())),
      opinions_(spec_.instance.node_count(), 1.0) {
  if (streak_target_ == 0) throw InvalidArgument("streak length must be at least 1");
  const auto& inst = spec_.instance;
  const std::uint64_t obs_seed = derive_seed(spec_.seed, Stream::Observations);
  for (NodeId i : inst.legitimate()) {
    agents_.push_back(AgentState::initial(inst.graph(), i));
    rngs_.emplace_back(derive_seed(obs_seed, i));
  }
  const auto adv = adversary_emit(spec_.adversary, inst, 0);
  for (NodeId m : inst.malicious()) std::copy(adv.begin(), adv.end(), opinions_.row(m).begin());
  record_metrics();
}

void Simulation::step() {
  const auto& inst = spec_.instance;
  ++round_;
  for (std::size_t k = 0; k < agents_.size(); ++k) {
    AgentState& a = agents_[k];
    for (std::size_t s = 0; s < a.in_neighbors.size(); ++s) {
      const NodeId j = a.in_neighbors[s];
      if (j == a.id) continue;
      a.beta[s] += observation::sample_alpha(spec_.model, inst.role(j), rngs_[k]) - 0.5;
    }
  }
  for (AgentState& a : agents_) update_opinions(a, opinions_);
  for (const AgentState& a : agents_) {
    std::copy(a.opinion.begin(), a.opinion.end(), opinions_.row(a.id).begin());
  }
  const auto adv = adversary_emit(spec_.adversary, inst, round_);
  for (NodeId m : inst.malicious()) std::copy(adv.begin(), adv.end(), opinions_.row(m).begin());
  record_metrics();
}

void Simulation::record_metrics() {
  const auto& inst = spec_.instance;
  const auto err = error_summary(inst, opinions_);
  mse_.push_back(err.mse);
  max_err_.push_back(err.max_error);
  min_err_.push_back(err.min_error);

  signs_correct_ = true;
  for (const AgentState& a : agents_) {
    for (std::size_t s = 0; s < a.in_neighbors.size() && signs_correct_; ++s) {
      signs_correct_ = (a.beta[s] >= 0.0) == inst.is_legitimate(a.in_neighbors[s]);
    }
    if (!signs_correct_) break;
  }
  if (!signs_correct_) last_bad_round_ = round_;

  all_correct_ = true;
  for (NodeId i : inst.legitimate()) {
    const auto row = opinions_.row(i);
    for (NodeId q = 0; q < row.size() && all_correct_; ++q) {
      all_correct_ = classified_correctly(inst, i, q, row[q]);
    }
    if (!all_correct_) break;
  }
  if (t_hat_max_) return;
  if (all_correct_) {
    if (!streak_start_) streak_start_ = round_;
    if (++streak_len_ >= streak_target_) t_hat_max_ = streak_start_;
  } else {
    streak_start_.reset();
    streak_len_ = 0;
  }
}

SimulationTrace Simulation::trace() const {
  const auto& inst = spec_.instance;
  SimulationTrace t;
  t.mse = mse_;
  t.max_error = max_err_;
  t.min_error = min_err_;
  t.t_f = t_f_estimate();
  t.t_hat_max = t_hat_max_;
  t.final_round = round_;
  t.n_legit = inst.legitimate().size();
  t.n_agents = inst.node_count();
  t.final_classification.reserve(t.n_legit * t.n_agents);
  for (NodeId i : inst.legitimate()) {
    for (NodeId q = 0; q < t.n_agents; ++q) {
      t.final_classification.push_back(classified_correctly(inst, i, q, opinions_(i, q)) ? 1 : 0);
    }
  }
  return t;
}

SimulationTrace run_trial(const TrialSpec& spec, const RoundObserver& observer) {
  if (spec.max_rounds < 1) throw InvalidArgument("max_rounds must be at least 1");
  if (!spec.skip_assumption_check) {
    const auto report = graph::verify_assumptions(spec.instance);
    if (!report.ok()) {
      throw ConfigRejected(report.legit_subgraph_strongly_connected
                               ? "some malicious agent has no legitimate observer"
                               : "legitimate subgraph is not strongly connected");
    }
  }
  Simulation sim(spec);
  if (observer) observer(sim);
  while (!sim.finished() && sim.round() < spec.max_rounds) {
    sim.step();
    if (observer) observer(sim);
  }
  return sim.trace();
}

}  // namespace dtrust::protocol
