#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dtrust/graph.hpp"
#include "dtrust/observation.hpp"
#include "dtrust/protocol.hpp"

namespace dtrust::analysis {

using graph::NodeId;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A row is deficient when its sum is below 1 - kRowSumTolerance.
inline constexpr double kRowSumTolerance = 1e-12;

// Throws DomainError unless W is square, nonnegative and every row sums to at
// most 1 + kRowSumTolerance.
void require_substochastic(const Matrix& w);
bool is_substochastic(const Matrix& w);

double inf_norm(const Matrix& w);

// Binary exponentiation.
Matrix matrix_power(const Matrix& w, std::uint64_t exponent);

// trusted[i] lists the trusted in-neighbors of agent i (empty for malicious agents).
using TrustedSets = std::vector<std::vector<NodeId>>;

// Trusted sets once every legitimate agent has learned its in-neighbors: N_i^in ∩ L.
TrustedSets settled_trusted_sets(const graph::NetworkInstance& inst);

// The trusted sets a running simulation currently uses.
TrustedSets current_trusted_sets(const protocol::Simulation& sim);

/// Update matrices for a fixed target q, split by column block.
///
/// Rows are the non-observers C_q. Entry (i, j) is 1/|T_i| when j is in the
/// trusted set T_i of row i and 0 otherwise.
struct PartitionedUpdate {
  NodeId q = 0;
  std::vector<NodeId> non_observers;  // C_q, row/column order of w_c
  std::vector<NodeId> observers;      // D_q, column order of w_d
  std::vector<NodeId> malicious;      // M, column order of w_m
  Matrix w_c;                         // u_q x u_q
  Matrix w_d;                         // u_q x |D_q|
  Matrix w_m;                         // u_q x |M|

  std::size_t u() const noexcept { return non_observers.size(); }
  // C_q, then D_q, then M.
  std::vector<NodeId> ordering() const;
};

PartitionedUpdate build_partitioned_update(const graph::NetworkInstance& inst, NodeId q,
                                           const TrustedSets& trusted);

// Exact support of a nonnegative matrix. Unlike graph::DirectedGraph it has no
// implicit self-loops: (i, i) is present only when W_ii > 0.
struct SupportGraph {
  std::vector<std::vector<std::size_t>> out;  // sorted

  std::size_t node_count() const noexcept { return out.size(); }
  bool has_edge(std::size_t i, std::size_t j) const;
  std::size_t edge_count() const noexcept;
};

// Edge (i, j) iff W_ij > 0. Throws DomainError on negative entries.
SupportGraph digraph_of(const Matrix& w);

struct ContractionResult {
  std::optional<std::size_t> value;  // empty means infinite
  std::vector<std::size_t> deficient_rows;
  // Finite case: a shortest path from the maximizing row into the deficient set.
  std::vector<std::size_t> witness_path;
  // Infinite case: a non-deficient row with no path to any deficient row.
  std::optional<std::size_t> unreachable_row;

  bool finite() const noexcept { return value.has_value(); }
};

/// Index of contraction of a substochastic matrix.
///
/// Multi-source BFS from the deficient rows over the reversed support graph
/// gives every row its shortest distance to a deficient row. The index is the
/// largest such distance over non-deficient rows (0 when there are none) and
/// infinite when some non-deficient row cannot reach the deficient set.
ContractionResult index_of_contraction(const Matrix& w);

bool is_weakly_chained(const Matrix& w);

struct ConvergenceResult {
  bool converged = false;
  std::vector<double> inf_norms;  // inf_norms[t-1] = ||W^t||_inf for t = 1..t_max
  std::optional<std::size_t> first_below_tol;
};

ConvergenceResult convergence_oracle(const Matrix& w, std::size_t t_max, double tol);

// 1 / log2(1 / (1 - (1/deg_max)^exponent)); 0 when deg_max == 1.
double h_constant(std::size_t deg_max, std::size_t exponent);

// Q = [[W, v], [0, 1]] with v_i = 1 - sum_j W_ij.
Matrix absorbing_chain(const Matrix& w_c);

// Probability of having reached the absorbing state within t steps, per start row.
Vector absorption_probabilities(const Matrix& w_c, std::size_t t);

struct AbsorptionBound {
  double h_q = 0.0;
  std::size_t contraction = 0;
  // Smallest multiple of (con + 1) whose exponent count exceeds h_q. Integral,
  // but kept as double because it overflows 64 bits for long cyclic chains.
  double rounds = 0.0;
  // ||W^rounds||_inf when rounds fits in 2^53, otherwise ||W^(2^k)||_inf for the
  // largest 2^k <= rounds, which bounds it from above.
  double norm_at_rounds = 0.0;
  // max over checked t of | ||W^t||_inf - (1 - min_i P(absorbed by t | i)) |.
  double identity_residual = 0.0;
};

// Throws BoundUndefined when the contraction index is infinite.
AbsorptionBound absorption_bound(const Matrix& w_c, std::size_t deg_max,
                                 const ContractionResult& con);

enum class DiameterScope { LegitimateSubgraph, FullGraph };

enum class PcVariant {
  MaliciousDegreeTotal,  // second term weighted by D_M
  AsPrinted,             // second term weighted by D_L
};

struct DegreeTotals {
  std::size_t legit = 0;      // sum over i in L of |N_i^in ∩ L|
  std::size_t malicious = 0;  // sum over i in L of |N_i^in ∩ M|
};

DegreeTotals degree_totals(const graph::NetworkInstance& inst);

struct FiniteTimeBounds {
  std::size_t d_legit = 0;
  std::size_t d_malicious = 0;
  double e_legit = 0.0;
  double e_malicious = 0.0;
  std::size_t deg_max = 0;
  std::size_t diameter = 0;
  double h = 0.0;
  double delta = 0.0;  // h * diameter + 1
  PcVariant pc_variant = PcVariant::MaliciousDegreeTotal;
};

FiniteTimeBounds finite_time_bounds(const graph::NetworkInstance& inst,
                                    const observation::TrustObservationModel& model,
                                    DiameterScope scope = DiameterScope::LegitimateSubgraph);

// Unclamped tail terms. Both throw DegenerateMargin if either margin is 0.
double pc(const FiniteTimeBounds& b, double t);
double pe(const FiniteTimeBounds& b, double t);

struct TailBounds {
  double prob_equal = 1.0;   // upper bound on Pr(T = t)
  double prob_exceed = 1.0;  // upper bound on Pr(T > t - 1)
};

// Bounds on T_f at round t: min{p(t - 1), 1}.
TailBounds tf_bounds(const FiniteTimeBounds& b, double t);
// Bounds on T_max at round t: min{p(t - Delta), 1}.
TailBounds tmax_bounds(const FiniteTimeBounds& b, double t);

// Delta_C(T_f + steps) = W_C^steps Delta_C(T_f), applied one multiplication at a time.
Vector replay_error(const Matrix& w_c, const Vector& delta_at_tf, std::size_t steps);

struct TargetAnalysis {
  NodeId q = 0;
  graph::Role role = graph::Role::Legitimate;
  std::size_t u = 0;
  ContractionResult contraction;
  std::optional<double> h_q;
  std::optional<double> bound_rounds;
};

struct InstanceAnalysis {
  std::vector<TargetAnalysis> targets;
  std::optional<std::size_t> con_max;  // over targets with nonempty C_q
  bool con_max_infinite = false;        // some target with nonempty C_q is not weakly chained
  std::optional<std::size_t> diameter;  // empty when the scoped graph is not strongly connected
  std::size_t deg_max = 0;
  std::optional<double> h;
  std::optional<double> delta;
  DiameterScope scope = DiameterScope::LegitimateSubgraph;
};

InstanceAnalysis analyze_instance(const graph::NetworkInstance& inst,
                                  DiameterScope scope = DiameterScope::LegitimateSubgraph);

}  // namespace dtrust::analysis
