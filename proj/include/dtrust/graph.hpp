#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dtrust::graph {

using NodeId = std::uint32_t;

enum class Role : std::uint8_t { Legitimate, Malicious };

const char* to_string(Role role) noexcept;

/// Directed graph in which every node carries a self-loop.
///
/// An edge (i, j) means i can send to j. Neighbor lists are kept sorted and
/// include the node itself.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::size_t node_count);

  std::size_t node_count() const noexcept { return in_.size(); }

  // Appends a node (with its self-loop) and returns its id.
  NodeId add_node();

  // Idempotent.
  void add_edge(NodeId from, NodeId to);
  void remove_edge(NodeId from, NodeId to);
  bool has_edge(NodeId from, NodeId to) const;

  std::span<const NodeId> in_neighbors(NodeId i) const { return in_.at(i); }
  std::span<const NodeId> out_neighbors(NodeId i) const { return out_.at(i); }

  std::size_t edge_count() const noexcept;

  // All edges including self-loops, sorted lexicographically.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  void check_node(NodeId i) const;

  std::vector<std::vector<NodeId>> in_;
  std::vector<std::vector<NodeId>> out_;
};

/// A communication graph plus the legitimate/malicious partition of its nodes.
class NetworkInstance {
 public:
  NetworkInstance() = default;
  // Throws InvalidArgument if roles do not cover the graph or no node is legitimate.
  NetworkInstance(DirectedGraph graph, std::vector<Role> roles);

  const DirectedGraph& graph() const noexcept { return graph_; }
  std::size_t node_count() const noexcept { return graph_.node_count(); }
  Role role(NodeId i) const { return roles_.at(i); }
  bool is_legitimate(NodeId i) const { return roles_.at(i) == Role::Legitimate; }
  const std::vector<Role>& roles() const noexcept { return roles_; }

  // Sorted.
  const std::vector<NodeId>& legitimate() const noexcept { return legit_; }
  const std::vector<NodeId>& malicious() const noexcept { return malicious_; }

  friend bool operator==(const NetworkInstance& a, const NetworkInstance& b) {
    return a.graph_ == b.graph_ && a.roles_ == b.roles_;
  }

 private:
  DirectedGraph graph_;
  std::vector<Role> roles_;
  std::vector<NodeId> legit_;
  std::vector<NodeId> malicious_;
};

struct AssumptionReport {
  bool legit_subgraph_strongly_connected = false;
  bool every_malicious_observed = false;
  std::vector<NodeId> violating_malicious_nodes;

  bool ok() const noexcept {
    return legit_subgraph_strongly_connected && every_malicious_observed;
  }
};

// D_q holds the legitimate agents observing q directly; C_q the remaining legitimate ones.
struct TargetPartition {
  NodeId q = 0;
  std::vector<NodeId> observers;      // D_q, sorted
  std::vector<NodeId> non_observers;  // C_q, sorted
  std::size_t u() const noexcept { return non_observers.size(); }
};

inline constexpr std::size_t kDefaultErAttempts = 1000;

DirectedGraph build_cyclic_legit(std::size_t n);
DirectedGraph build_complete(std::size_t n);

// Each ordered pair (i, j), i != j, is kept with probability p. Attempt k draws
// from derive_seed(seed, k) and the first strongly connected draw is returned.
DirectedGraph build_erdos_renyi_legit(std::size_t n, double p, std::uint64_t seed,
                                      std::size_t max_attempts = kDefaultErAttempts);

// The edge probability used for legitimate ER graphs: 2 ln(n) / n.
double default_er_probability(std::size_t n);

/// Appends m malicious nodes to a legitimate graph.
///
/// For each malicious node, edges to every other node and edges from every
/// legitimate node are drawn independently with probability edge_prob. The
/// out-edges of a malicious node are redrawn until at least one legitimate
/// node observes it.
NetworkInstance attach_malicious(const DirectedGraph& legit, std::size_t m, double edge_prob,
                                 std::uint64_t seed);

// Tarjan's algorithm restricted to `nodes`; components come back in reverse
// topological order.
std::vector<std::vector<NodeId>> strongly_connected_components(const DirectedGraph& g,
                                                               std::span<const NodeId> nodes);
std::vector<std::vector<NodeId>> strongly_connected_components(const DirectedGraph& g);
bool is_strongly_connected(const DirectedGraph& g, std::span<const NodeId> nodes);
bool is_strongly_connected(const DirectedGraph& g);

AssumptionReport verify_assumptions(const NetworkInstance& inst);

TargetPartition target_partition(const NetworkInstance& inst, NodeId q);

// Subgraph induced by `nodes`, relabelled 0..k-1 in the order given.
DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const NodeId> nodes);

// Single-source BFS distances; unreachable nodes get -1.
std::vector<int> bfs_distances(const DirectedGraph& g, NodeId source);

// Longest shortest directed path over all ordered pairs. Throws UndefinedDiameter
// when some pair is unreachable.
std::size_t diameter(const DirectedGraph& g);

// max |N_i^in| over i in `subset`, counting the self-loop.
std::size_t max_in_degree(const NetworkInstance& inst, std::span<const NodeId> subset);

// Edge-list text: "#role <i> legit|malicious" lines, then one "<i> <j>" pair per
// line. Self-loops are implicit and not written.
void write_edge_list(std::ostream& out, const NetworkInstance& inst);
std::string to_edge_list(const NetworkInstance& inst);
NetworkInstance read_edge_list(std::istream& in);
NetworkInstance parse_edge_list(const std::string& text);
NetworkInstance load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const NetworkInstance& inst);

// Two legitimate agents (0, 1) observing each other and two malicious agents:
// node 2 is observed by nobody, node 3 is observed by both legitimate agents.
NetworkInstance assumption_violation_fixture();
const std::string& assumption_violation_fixture_text();

}  // namespace dtrust::graph
