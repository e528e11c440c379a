#include "dtrust/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "dtrust/error.hpp"

namespace dtrust::analysis {

using graph::NetworkInstance;

bool is_substochastic(const Matrix& w) {
  if (w.rows() != w.cols()) return false;
  if ((w.array() < 0.0).any() || !w.allFinite()) return false;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (w.row(i).sum() > 1.0 + kRowSumTolerance) return false;
  }
  return true;
}

void require_substochastic(const Matrix& w) {
  if (w.rows() != w.cols()) throw DomainError("matrix is not square");
  if (!is_substochastic(w)) {
    throw DomainError("matrix is not substochastic (negative entry or row sum above 1)");
  }
}

double inf_norm(const Matrix& w) {
  if (w.size() == 0) return 0.0;
  return w.cwiseAbs().rowwise().sum().maxCoeff();
}

Matrix matrix_power(const Matrix& w, std::uint64_t exponent) {
  if (w.rows() != w.cols()) throw DomainError("matrix power needs a square matrix");
  Matrix result = Matrix::Identity(w.rows(), w.cols());
  Matrix base = w;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

TrustedSets settled_trusted_sets(const NetworkInstance& inst) {
  TrustedSets sets(inst.node_count());
  for (NodeId i : inst.legitimate()) {
    for (NodeId j : inst.graph().in_neighbors(i)) {
      if (inst.is_legitimate(j)) sets[i].push_back(j);
    }
  }
  return sets;
}

TrustedSets current_trusted_sets(const protocol::Simulation& sim) {
  const auto& inst = sim.instance();
  TrustedSets sets(inst.node_count());
  for (std::size_t k = 0; k < inst.legitimate().size(); ++k) {
    const auto& a = sim.agent(k);
    sets[a.id] = protocol::trusted_in_neighbors(a);
  }
  return sets;
}

std::vector<NodeId> PartitionedUpdate::ordering() const {
  std::vector<NodeId> order = non_observers;
  order.insert(order.end(), observers.begin(), observers.end());
  order.insert(order.end(), malicious.begin(), malicious.end());
  return order;
}

PartitionedUpdate build_partitioned_update(const NetworkInstance& inst, NodeId q,
                                           const TrustedSets& trusted) {
  if (trusted.size() != inst.node_count()) {
    throw InvalidArgument("trusted sets must have one entry per agent");
  }
  const auto part = graph::target_partition(inst, q);
  PartitionedUpdate up;
  up.q = q;
  up.non_observers = part.non_observers;
  up.observers = part.observers;
  up.malicious = inst.malicious();

  // Column position of each agent inside its block.
  enum class Block { C, D, M };
  std::vector<std::pair<Block, Eigen::Index>> where(inst.node_count());
  for (std::size_t k = 0; k < up.non_observers.size(); ++k) {
    where[up.non_observers[k]] = {Block::C, static_cast<Eigen::Index>(k)};
  }
  for (std::size_t k = 0; k < up.observers.size(); ++k) {
    where[up.observers[k]] = {Block::D, static_cast<Eigen::Index>(k)};
  }
  for (std::size_t k = 0; k < up.malicious.size(); ++k) {
    where[up.malicious[k]] = {Block::M, static_cast<Eigen::Index>(k)};
  }

  const auto u = static_cast<Eigen::Index>(up.u());
  up.w_c = Matrix::Zero(u, u);
  up.w_d = Matrix::Zero(u, static_cast<Eigen::Index>(up.observers.size()));
  up.w_m = Matrix::Zero(u, static_cast<Eigen::Index>(up.malicious.size()));
  for (Eigen::Index r = 0; r < u; ++r) {
    const NodeId i = up.non_observers[static_cast<std::size_t>(r)];
    const auto& set = trusted[i];
    if (std::find(set.begin(), set.end(), i) == set.end()) {
      throw InvalidArgument("trusted set of agent " + std::to_string(i) + " must contain itself");
    }
    const double weight = 1.0 / static_cast<double>(set.size());
    for (NodeId j : set) {
      if (!inst.graph().has_edge(j, i)) {
        throw InvalidArgument("trusted set of agent " + std::to_string(i) +
                              " contains non-in-neighbor " + std::to_string(j));
      }
      const auto [block, col] = where[j];
      (block == Block::C ? up.w_c : block == Block::D ? up.w_d : up.w_m)(r, col) = weight;
    }
  }
  return up;
}

SupportGraph digraph_of(const Matrix& w) {
  if (w.rows() != w.cols()) throw DomainError("digraph of a non-square matrix");
  if ((w.array() < 0.0).any()) throw DomainError("digraph of a matrix with negative entries");
  SupportGraph g;
  g.out.resize(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (w(i, j) > 0.0) g.out[static_cast<std::size_t>(i)].push_back(static_cast<std::size_t>(j));
    }
  }
  return g;
}

bool SupportGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto& o = out.at(i);
  return std::binary_search(o.begin(), o.end(), j);
}

std::size_t SupportGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& o : out) total += o.size();
  return total;
}

ContractionResult index_of_contraction(const Matrix& w) {
  require_substochastic(w);
  const auto n = static_cast<std::size_t>(w.rows());
  ContractionResult res;
  std::vector<int> dist(n, -1);
  std::vector<std::size_t> next(n, std::numeric_limits<std::size_t>::max());
  std::queue<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    if (w.row(static_cast<Eigen::Index>(i)).sum() < 1.0 - kRowSumTolerance) {
      res.deficient_rows.push_back(i);
      dist[i] = 0;
      frontier.push(i);
    }
  }
  // Walk support edges backwards: row i reaches j in one step when W_ij > 0.
  while (!frontier.empty()) {
    const std::size_t j = frontier.front();
    frontier.pop();
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i] < 0 && w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.0) {
        dist[i] = dist[j] + 1;
        next[i] = j;
        frontier.push(i);
      }
    }
  }
  std::size_t best = 0;
  std::optional<std::size_t> arg;
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i] < 0) {
      res.unreachable_row = i;
      return res;
    }
    if (!arg || static_cast<std::size_t>(dist[i]) > best) {
      best = static_cast<std::size_t>(dist[i]);
      arg = i;
    }
  }
  res.value = best;
  if (arg) {
    for (std::size_t v = *arg;; v = next[v]) {
      res.witness_path.push_back(v);
      if (dist[v] == 0) break;
    }
  }
  return res;
}

bool is_weakly_chained(const Matrix& w) { return index_of_contraction(w).finite(); }

ConvergenceResult convergence_oracle(const Matrix& w, std::size_t t_max, double tol) {
  if (w.rows() != w.cols()) throw DomainError("convergence oracle needs a square matrix");
  ConvergenceResult res;
  res.inf_norms.reserve(t_max);
  Matrix power = Matrix::Identity(w.rows(), w.cols());
  for (std::size_t t = 1; t <= t_max; ++t) {
    power = power * w;
    const double norm = inf_norm(power);
    res.inf_norms.push_back(norm);
    if (!res.first_below_tol && norm < tol) res.first_below_tol = t;
  }
  res.converged = res.first_below_tol.has_value();
  return res;
}

double h_constant(std::size_t deg_max, std::size_t exponent) {
  if (deg_max < 1) throw InvalidArgument("deg_max must be at least 1");
  const double x = std::pow(1.0 / static_cast<double>(deg_max), static_cast<double>(exponent));
  if (x >= 1.0) return 0.0;
  // log2(1 / (1 - x)) = -log1p(-x) / ln 2, accurate for tiny x.
  return std::numbers::ln2 / -std::log1p(-x);
}

Matrix absorbing_chain(const Matrix& w_c) {
  require_substochastic(w_c);
  const Eigen::Index u = w_c.rows();
  Matrix q = Matrix::Zero(u + 1, u + 1);
  q.topLeftCorner(u, u) = w_c;
  for (Eigen::Index i = 0; i < u; ++i) q(i, u) = std::max(0.0, 1.0 - w_c.row(i).sum());
  q(u, u) = 1.0;
  return q;
}

Vector absorption_probabilities(const Matrix& w_c, std::size_t t) {
  const Matrix qt = matrix_power(absorbing_chain(w_c), t);
  return qt.col(w_c.rows()).head(w_c.rows());
}

AbsorptionBound absorption_bound(const Matrix& w_c, std::size_t deg_max,
                                 const ContractionResult& con) {
  require_substochastic(w_c);
  if (!con.finite()) {
    throw BoundUndefined("absorption bound needs a finite contraction index");
  }
  AbsorptionBound b;
  b.contraction = *con.value;
  const std::size_t span = b.contraction + 1;
  b.h_q = h_constant(deg_max, span);
  b.rounds = (std::floor(b.h_q) + 1.0) * static_cast<double>(span);

  const Eigen::Index u = w_c.rows();
  if (u == 0) return b;

  // Exact power when the exponent is representable; otherwise the largest
  // power of two below it, which is no smaller in norm.
  constexpr double kExact = 9007199254740992.0;  // 2^53
  std::uint64_t exponent = 0;
  if (b.rounds <= kExact) {
    exponent = static_cast<std::uint64_t>(b.rounds);
  } else {
    exponent = std::uint64_t{1} << 52;
  }
  const Matrix q = absorbing_chain(w_c);
  auto residual_at = [&](std::uint64_t t) {
    const Matrix qt = matrix_power(q, t);
    const double norm = inf_norm(qt.topLeftCorner(u, u));
    const double via_absorption = 1.0 - qt.col(u).head(u).minCoeff();
    b.identity_residual = std::max(b.identity_residual, std::abs(norm - via_absorption));
    return norm;
  };
  residual_at(1);
  residual_at(span);
  b.norm_at_rounds = residual_at(exponent);
  return b;
}

DegreeTotals degree_totals(const NetworkInstance& inst) {
  DegreeTotals d;
  for (NodeId i : inst.legitimate()) {
    for (NodeId j : inst.graph().in_neighbors(i)) {
      (inst.is_legitimate(j) ? d.legit : d.malicious) += 1;
    }
  }
  return d;
}

namespace {

std::optional<std::size_t> scoped_diameter(const NetworkInstance& inst, DiameterScope scope) {
  try {
    if (scope == DiameterScope::FullGraph) return graph::diameter(inst.graph());
    return graph::diameter(graph::induced_subgraph(inst.graph(), inst.legitimate()));
  } catch (const UndefinedDiameter&) {
    return std::nullopt;
  }
}

void check_margins(const FiniteTimeBounds& b) {
  if (b.e_legit == 0.0 || b.e_malicious == 0.0) {
    throw DegenerateMargin("tail bounds need nonzero margins E_L and E_M");
  }
}

}  // namespace

FiniteTimeBounds finite_time_bounds(const NetworkInstance& inst,
                                    const observation::TrustObservationModel& model,
                                    DiameterScope scope) {
  FiniteTimeBounds b;
  const auto totals = degree_totals(inst);
  b.d_legit = totals.legit;
  b.d_malicious = totals.malicious;
  const auto m = observation::margins(model);
  b.e_legit = m.legit;
  b.e_malicious = m.malicious;
  b.deg_max = graph::max_in_degree(inst, inst.legitimate());
  const auto diam = scoped_diameter(inst, scope);
  if (!diam) throw UndefinedDiameter("finite-time bounds need a strongly connected graph");
  b.diameter = *diam;
  b.h = h_constant(b.deg_max, b.diameter);
  b.delta = b.h * static_cast<double>(b.diameter) + 1.0;
  return b;
}

double pc(const FiniteTimeBounds& b, double t) {
  check_margins(b);
  const double second_weight = b.pc_variant == PcVariant::AsPrinted
                                   ? static_cast<double>(b.d_legit)
                                   : static_cast<double>(b.d_malicious);
  return static_cast<double>(b.d_legit) * std::exp(-2.0 * t * b.e_legit * b.e_legit) +
         second_weight * std::exp(-2.0 * t * b.e_malicious * b.e_malicious);
}

double pe(const FiniteTimeBounds& b, double t) {
  check_margins(b);
  auto term = [t](double weight, double e) {
    return weight * std::exp(-2.0 * t * e * e) / -std::expm1(-2.0 * e * e);
  };
  return term(static_cast<double>(b.d_legit), b.e_legit) +
         term(static_cast<double>(b.d_malicious), b.e_malicious);
}

namespace {

TailBounds clamped(const FiniteTimeBounds& b, double shifted) {
  return {std::min(pc(b, shifted), 1.0), std::min(pe(b, shifted), 1.0)};
}

}  // namespace

TailBounds tf_bounds(const FiniteTimeBounds& b, double t) { return clamped(b, t - 1.0); }

TailBounds tmax_bounds(const FiniteTimeBounds& b, double t) { return clamped(b, t - b.delta); }

Vector replay_error(const Matrix& w_c, const Vector& delta_at_tf, std::size_t steps) {
  if (w_c.rows() != w_c.cols() || w_c.cols() != delta_at_tf.size()) {
    throw InvalidArgument("replay dimensions do not match");
  }
  Vector v = delta_at_tf;
  for (std::size_t s = 0; s < steps; ++s) v = w_c * v;
  return v;
}

InstanceAnalysis analyze_instance(const NetworkInstance& inst, DiameterScope scope) {
  InstanceAnalysis a;
  a.scope = scope;
  a.deg_max = graph::max_in_degree(inst, inst.legitimate());
  a.diameter = scoped_diameter(inst, scope);
  if (a.diameter) {
    a.h = h_constant(a.deg_max, *a.diameter);
    a.delta = *a.h * static_cast<double>(*a.diameter) + 1.0;
  }
  const auto settled = settled_trusted_sets(inst);
  for (NodeId q = 0; q < inst.node_count(); ++q) {
    TargetAnalysis t;
    t.q = q;
    t.role = inst.role(q);
    const auto up = build_partitioned_update(inst, q, settled);
    t.u = up.u();
    t.contraction = index_of_contraction(up.w_c);
    if (t.u > 0 && t.contraction.finite()) {
      const auto bound = absorption_bound(up.w_c, a.deg_max, t.contraction);
      t.h_q = bound.h_q;
      t.bound_rounds = bound.rounds;
    }
    if (t.u > 0) {
      if (t.contraction.finite()) {
        a.con_max = std::max(a.con_max.value_or(0), *t.contraction.value);
      } else {
        a.con_max_infinite = true;
      }
    }
    a.targets.push_back(std::move(t));
  }
  return a;
}

}  // namespace dtrust::analysis
