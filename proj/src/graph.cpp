#include "dtrust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "dtrust/error.hpp"
#include "dtrust/random.hpp"

namespace dtrust::graph {

const char* to_string(Role role) noexcept {
  return role == Role::Legitimate ? "legit" : "malicious";
}

namespace {

void sorted_insert(std::vector<NodeId>& v, NodeId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void sorted_erase(std::vector<NodeId>& v, NodeId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t node_count) : in_(node_count), out_(node_count) {
  for (std::size_t i = 0; i < node_count; ++i) {
    in_[i].push_back(static_cast<NodeId>(i));
    out_[i].push_back(static_cast<NodeId>(i));
  }
}

NodeId DirectedGraph::add_node() {
  const auto id = static_cast<NodeId>(in_.size());
  in_.push_back({id});
  out_.push_back({id});
  return id;
}

void DirectedGraph::check_node(NodeId i) const {
  if (i >= node_count()) {
    throw InvalidArgument("node " + std::to_string(i) + " out of range for graph with " +
                          std::to_string(node_count()) + " nodes");
  }
}

void DirectedGraph::add_edge(NodeId from, NodeId to) {
  check_node(from);
  check_node(to);
  sorted_insert(out_[from], to);
  sorted_insert(in_[to], from);
}

void DirectedGraph::remove_edge(NodeId from, NodeId to) {
  check_node(from);
  check_node(to);
  if (from == to) throw InvalidArgument("self-loops cannot be removed");
  sorted_erase(out_[from], to);
  sorted_erase(in_[to], from);
}

bool DirectedGraph::has_edge(NodeId from, NodeId to) const {
  check_node(from);
  check_node(to);
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::size_t DirectedGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& o : out_) total += o.size();
  return total;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> result;
  result.reserve(edge_count());
  for (std::size_t i = 0; i < out_.size(); ++i) {
    for (NodeId j : out_[i]) result.emplace_back(static_cast<NodeId>(i), j);
  }
  return result;
}

NetworkInstance::NetworkInstance(DirectedGraph graph, std::vector<Role> roles)
    : graph_(std::move(graph)), roles_(std::move(roles)) {
  if (roles_.size() != graph_.node_count()) {
    throw InvalidArgument("role map covers " + std::to_string(roles_.size()) +
                          " nodes but graph has " + std::to_string(graph_.node_count()));
  }
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    (roles_[i] == Role::Legitimate ? legit_ : malicious_).push_back(static_cast<NodeId>(i));
  }
  if (legit_.empty()) throw InvalidArgument("a network needs at least one legitimate agent");
}

DirectedGraph build_cyclic_legit(std::size_t n) {
  if (n < 2) throw InvalidArgument("cyclic graph needs n >= 2, got " + std::to_string(n));
  DirectedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  }
  return g;
}

DirectedGraph build_complete(std::size_t n) {
  if (n < 1) throw InvalidArgument("complete graph needs n >= 1");
  DirectedGraph g(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

double default_er_probability(std::size_t n) {
  return 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n);
}

DirectedGraph build_erdos_renyi_legit(std::size_t n, double p, std::uint64_t seed,
                                      std::size_t max_attempts) {
  if (n < 2) throw InvalidArgument("Erdos-Renyi graph needs n >= 2, got " + std::to_string(n));
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in (0, 1]");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    DirectedGraph g(n);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i != j && rng.bernoulli(p)) g.add_edge(i, j);
      }
    }
    if (is_strongly_connected(g)) return g;
  }
  throw GenerationFailure("no strongly connected Erdos-Renyi graph after " +
                              std::to_string(max_attempts) + " attempts",
                          max_attempts);
}

NetworkInstance attach_malicious(const DirectedGraph& legit, std::size_t m, double edge_prob,
                                 std::uint64_t seed) {
  if (m > 0 && !(edge_prob > 0.0 && edge_prob <= 1.0)) {
    throw InvalidArgument("malicious edge probability must lie in (0, 1]");
  }
  const std::size_t n_legit = legit.node_count();
  if (n_legit == 0) throw InvalidArgument("legitimate graph is empty");

  DirectedGraph g = legit;
  std::vector<Role> roles(n_legit, Role::Legitimate);
  for (std::size_t k = 0; k < m; ++k) {
    g.add_node();
    roles.push_back(Role::Malicious);
  }
  const std::size_t n = g.node_count();

  Rng rng(seed);
  std::vector<NodeId> out;
  for (std::size_t k = 0; k < m; ++k) {
    const auto mal = static_cast<NodeId>(n_legit + k);
    // Out-edges of mal to every other node; malicious->malicious pairs are
    // drawn here exactly once, from the sender's side.
    bool observed = false;
    while (!observed) {
      out.clear();
      for (NodeId j = 0; j < n; ++j) {
        if (j != mal && rng.bernoulli(edge_prob)) {
          out.push_back(j);
          observed = observed || j < n_legit;
        }
      }
    }
    for (NodeId j : out) g.add_edge(mal, j);
    for (NodeId i = 0; i < n_legit; ++i) {
      if (rng.bernoulli(edge_prob)) g.add_edge(i, mal);
    }
  }
  return NetworkInstance(std::move(g), std::move(roles));
}

std::vector<std::vector<NodeId>> strongly_connected_components(const DirectedGraph& g,
                                                               std::span<const NodeId> nodes) {
  constexpr int kUnvisited = -1;
  const std::size_t n = g.node_count();
  std::vector<char> member(n, 0);
  for (NodeId v : nodes) member.at(v) = 1;

  std::vector<int> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeId> stack;
  std::vector<std::vector<NodeId>> components;
  int counter = 0;

  // Iterative Tarjan: frame = (node, position in its out-neighbor list).
  std::vector<std::pair<NodeId, std::size_t>> frames;
  for (NodeId root : nodes) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto succ = g.out_neighbors(v);
      if (pos < succ.size()) {
        const NodeId w = succ[pos++];
        if (!member[w]) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const NodeId done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const NodeId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<NodeId> comp;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

std::vector<std::vector<NodeId>> strongly_connected_components(const DirectedGraph& g) {
  std::vector<NodeId> all(g.node_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<NodeId>(i);
  return strongly_connected_components(g, all);
}

bool is_strongly_connected(const DirectedGraph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) return false;
  return strongly_connected_components(g, nodes).size() == 1;
}

bool is_strongly_connected(const DirectedGraph& g) {
  return g.node_count() > 0 && strongly_connected_components(g).size() == 1;
}

AssumptionReport verify_assumptions(const NetworkInstance& inst) {
  AssumptionReport report;
  report.legit_subgraph_strongly_connected =
      is_strongly_connected(inst.graph(), inst.legitimate());
  for (NodeId j : inst.malicious()) {
    const auto out = inst.graph().out_neighbors(j);
    const bool observed =
        std::any_of(out.begin(), out.end(), [&](NodeId i) { return inst.is_legitimate(i); });
    if (!observed) report.violating_malicious_nodes.push_back(j);
  }
  report.every_malicious_observed = report.violating_malicious_nodes.empty();
  return report;
}

TargetPartition target_partition(const NetworkInstance& inst, NodeId q) {
  if (q >= inst.node_count()) throw InvalidArgument("target " + std::to_string(q) + " not in V");
  TargetPartition part;
  part.q = q;
  const auto& g = inst.graph();
  for (NodeId i : inst.legitimate()) {
    (g.has_edge(q, i) ? part.observers : part.non_observers).push_back(i);
  }
  return part;
}

DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> local(g.node_count(), kAbsent);
  for (std::size_t k = 0; k < nodes.size(); ++k) local.at(nodes[k]) = static_cast<NodeId>(k);
  DirectedGraph sub(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (NodeId w : g.out_neighbors(nodes[k])) {
      if (local[w] != kAbsent) sub.add_edge(static_cast<NodeId>(k), local[w]);
    }
  }
  return sub;
}

std::vector<int> bfs_distances(const DirectedGraph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<NodeId> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (NodeId w : g.out_neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

std::size_t diameter(const DirectedGraph& g) {
  if (g.node_count() == 0) throw UndefinedDiameter("diameter of an empty graph");
  int best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    for (int d : bfs_distances(g, s)) {
      if (d < 0) throw UndefinedDiameter("graph is not strongly connected");
      best = std::max(best, d);
    }
  }
  return static_cast<std::size_t>(best);
}

std::size_t max_in_degree(const NetworkInstance& inst, std::span<const NodeId> subset) {
  std::size_t best = 0;
  for (NodeId i : subset) best = std::max(best, inst.graph().in_neighbors(i).size());
  return best;
}

void write_edge_list(std::ostream& out, const NetworkInstance& inst) {
  for (std::size_t i = 0; i < inst.node_count(); ++i) {
    out << "#role " << i << ' ' << to_string(inst.role(static_cast<NodeId>(i))) << '\n';
  }
  for (const auto& [i, j] : inst.graph().edges()) {
    if (i != j) out << i << ' ' << j << '\n';
  }
}

std::string to_edge_list(const NetworkInstance& inst) {
  std::ostringstream os;
  write_edge_list(os, inst);
  return os.str();
}

NetworkInstance read_edge_list(std::istream& in) {
  std::vector<std::pair<std::size_t, Role>> role_lines;
  std::vector<std::pair<std::size_t, std::size_t>> edge_lines;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("edge list line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "#role") {
      long long id = -1;
      std::string role;
      if (!(ls >> id >> role) || id < 0) fail("malformed #role line");
      if (role == "legit") {
        role_lines.emplace_back(static_cast<std::size_t>(id), Role::Legitimate);
      } else if (role == "malicious") {
        role_lines.emplace_back(static_cast<std::size_t>(id), Role::Malicious);
      } else {
        fail("unknown role '" + role + "'");
      }
      continue;
    }
    if (head.front() == '#') continue;
    long long i = -1, j = -1;
    std::istringstream es(line);
    std::string rest;
    if (!(es >> i >> j) || i < 0 || j < 0 || (es >> rest)) fail("expected '<i> <j>'");
    edge_lines.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }

  const std::size_t n = role_lines.size();
  std::vector<Role> roles(n, Role::Legitimate);
  std::vector<char> seen(n, 0);
  for (const auto& [id, role] : role_lines) {
    if (id >= n || seen[id]) {
      throw ParseError("node ids in #role lines must be unique and dense in [0, " +
                       std::to_string(n) + ")");
    }
    seen[id] = 1;
    roles[id] = role;
  }
  DirectedGraph g(n);
  for (const auto& [i, j] : edge_lines) {
    if (i >= n || j >= n) {
      throw ParseError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") references a node without a #role line");
    }
    g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
  }
  return NetworkInstance(std::move(g), std::move(roles));
}

NetworkInstance parse_edge_list(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

NetworkInstance load_edge_list(const std::string& path) {
  if (path == "@fig5") return assumption_violation_fixture();
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const NetworkInstance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file '" + path + "'");
  write_edge_list(out, inst);
  if (!out) throw Error("failed writing graph file '" + path + "'");
}

const std::string& assumption_violation_fixture_text() {
  static const std::string text =
      "# Two legitimate agents, two malicious agents.\n"
      "# Node 2 (m1) is not an in-neighbor of any legitimate agent.\n"
      "# Node 3 (m2) is an in-neighbor of both legitimate agents.\n"
      "#role 0 legit\n"
      "#role 1 legit\n"
      "#role 2 malicious\n"
      "#role 3 malicious\n"
      "0 1\n"
      "0 2\n"
      "1 0\n"
      "1 2\n"
      "2 3\n"
      "3 0\n"
      "3 1\n";
  return text;
}

NetworkInstance assumption_violation_fixture() {
  return parse_edge_list(assumption_violation_fixture_text());
}

}  // namespace dtrust::graph
