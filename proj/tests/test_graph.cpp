#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dtrust/error.hpp"
#include "dtrust/graph.hpp"
#include "oracles.hpp"

using namespace dtrust;
using namespace dtrust::graph;

TEST(DirectedGraph, SelfLoopsAlwaysPresent) {
  DirectedGraph g(3);
  for (NodeId i = 0; i < 3; ++i) EXPECT_TRUE(g.has_edge(i, i));
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_THROW(g.remove_edge(1, 1), InvalidArgument);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  EXPECT_EQ(g.edge_count(), 4u);
  g.remove_edge(0, 1);
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_THROW(g.add_edge(0, 7), InvalidArgument);
}

TEST(Cyclic, ThreeNodes) {
  const auto g = build_cyclic_legit(3);
  std::vector<std::pair<NodeId, NodeId>> want = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}};
  EXPECT_EQ(g.edges(), want);
}

TEST(Cyclic, InDegreeTwoWithSelf) {
  const auto g = build_cyclic_legit(20);
  for (NodeId i = 0; i < 20; ++i) EXPECT_EQ(g.in_neighbors(i).size(), 2u);
  const NetworkInstance inst(g, std::vector<Role>(20, Role::Legitimate));
  EXPECT_EQ(max_in_degree(inst, inst.legitimate()), 2u);
}

TEST(Cyclic, SixNodeShape) {
  const auto g = build_cyclic_legit(6);
  EXPECT_EQ(g.edge_count(), 12u);
  for (NodeId i = 0; i < 6; ++i) {
    EXPECT_TRUE(g.has_edge(i, (i + 1) % 6));
    EXPECT_EQ(g.out_neighbors(i).size(), 2u);
  }
  EXPECT_TRUE(is_strongly_connected(g));
}

TEST(Cyclic, RejectsTooSmall) {
  EXPECT_THROW(build_cyclic_legit(1), InvalidArgument);
  EXPECT_THROW(build_cyclic_legit(0), InvalidArgument);
}

TEST(Cyclic, DiameterIsNMinusOne) {
  for (std::size_t n = 3; n <= 50; ++n) EXPECT_EQ(diameter(build_cyclic_legit(n)), n - 1) << n;
}

TEST(Complete, DiameterOne) { EXPECT_EQ(diameter(build_complete(7)), 1u); }

TEST(Diameter, UndefinedWhenDisconnected) {
  DirectedGraph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(diameter(g), UndefinedDiameter);
}

TEST(ErdosRenyi, DefaultProbability) {
  EXPECT_NEAR(default_er_probability(40), 2.0 * std::log(40.0) / 40.0, 1e-15);
  EXPECT_NEAR(default_er_probability(40), 0.184, 1e-3);
}

TEST(ErdosRenyi, CompleteWhenPIsOne) {
  const auto g = build_erdos_renyi_legit(2, 1.0, 5);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_TRUE(is_strongly_connected(g));
}

TEST(ErdosRenyi, DeterministicUnderSeed) {
  const auto a = build_erdos_renyi_legit(10, 0.5, 1234);
  const auto b = build_erdos_renyi_legit(10, 0.5, 1234);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.edges(), b.edges());
  bool differs = false;
  for (std::uint64_t s = 1; s < 10 && !differs; ++s) differs = !(build_erdos_renyi_legit(10, 0.5, 1234 + s) == a);
  EXPECT_TRUE(differs);
}

TEST(ErdosRenyi, AlwaysStronglyConnected) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_TRUE(is_strongly_connected(build_erdos_renyi_legit(40, default_er_probability(40), s)));
  }
}

TEST(ErdosRenyi, RetryBudgetExhausted) {
  try {
    build_erdos_renyi_legit(30, 0.01, 3, 7);
    FAIL() << "expected GenerationFailure";
  } catch (const GenerationFailure& e) {
    EXPECT_EQ(e.attempts(), 7u);
  }
}

TEST(ErdosRenyi, RejectsBadArguments) {
  EXPECT_THROW(build_erdos_renyi_legit(1, 0.5, 0), InvalidArgument);
  EXPECT_THROW(build_erdos_renyi_legit(5, 0.0, 0), InvalidArgument);
  EXPECT_THROW(build_erdos_renyi_legit(5, 1.5, 0), InvalidArgument);
}

TEST(AttachMalicious, NoMalicious) {
  const auto inst = attach_malicious(build_cyclic_legit(5), 0, 0.2, 1);
  EXPECT_TRUE(inst.malicious().empty());
  EXPECT_EQ(inst.legitimate().size(), 5u);
  EXPECT_TRUE(verify_assumptions(inst).ok());
}

TEST(AttachMalicious, DefaultDensity) {
  const auto inst = attach_malicious(build_erdos_renyi_legit(40, default_er_probability(40), 9), 60, 0.2, 10);
  EXPECT_EQ(inst.node_count(), 100u);
  EXPECT_EQ(inst.malicious().size(), 60u);
  for (NodeId m : inst.malicious()) EXPECT_EQ(m >= 40, true);
  EXPECT_TRUE(verify_assumptions(inst).ok());
  // Legit -> malicious edges: 40 * 60 pairs at p = 0.2.
  std::size_t into_malicious = 0;
  for (NodeId i : inst.legitimate()) {
    for (NodeId j : inst.graph().out_neighbors(i)) into_malicious += !inst.is_legitimate(j);
  }
  EXPECT_NEAR(static_cast<double>(into_malicious) / 2400.0, 0.2, 0.03);
}

TEST(AttachMalicious, SparseStillObserved) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto inst = attach_malicious(build_cyclic_legit(6), 1, 0.01, s);
    const NodeId m = inst.malicious().front();
    const auto out = inst.graph().out_neighbors(m);
    EXPECT_TRUE(std::any_of(out.begin(), out.end(), [&](NodeId j) { return inst.is_legitimate(j); }));
    EXPECT_TRUE(verify_assumptions(inst).ok());
  }
}

TEST(AttachMalicious, DeterministicUnderSeed) {
  const auto legit = build_cyclic_legit(12);
  EXPECT_EQ(attach_malicious(legit, 18, 0.2, 77), attach_malicious(legit, 18, 0.2, 77));
}

TEST(Assumptions, ViolationFixture) {
  const auto report = verify_assumptions(assumption_violation_fixture());
  EXPECT_TRUE(report.legit_subgraph_strongly_connected);
  EXPECT_FALSE(report.every_malicious_observed);
  EXPECT_EQ(report.violating_malicious_nodes, std::vector<NodeId>{2});
}

TEST(Assumptions, DisjointCycles) {
  DirectedGraph g(6);
  for (NodeId i = 0; i < 3; ++i) {
    g.add_edge(i, (i + 1) % 3);
    g.add_edge(3 + i, 3 + (i + 1) % 3);
  }
  const auto report = verify_assumptions(NetworkInstance(g, std::vector<Role>(6, Role::Legitimate)));
  EXPECT_FALSE(report.legit_subgraph_strongly_connected);
  EXPECT_TRUE(report.every_malicious_observed);
  EXPECT_TRUE(report.violating_malicious_nodes.empty());
}

TEST(Assumptions, ViolatingListEmptyIffObserved) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto inst = attach_malicious(build_cyclic_legit(5), 3, 0.3, s);
    const auto r = verify_assumptions(inst);
    EXPECT_EQ(r.violating_malicious_nodes.empty(), r.every_malicious_observed);
  }
}

TEST(Partition, SmallExampleLegitTarget) {
  const auto p = target_partition(oracle::small_example(), 1);
  EXPECT_EQ(p.observers, (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(p.non_observers, (std::vector<NodeId>{0, 3}));
  EXPECT_EQ(p.u(), 2u);
}

TEST(Partition, SmallExampleMaliciousTarget) {
  const auto p = target_partition(oracle::small_example(), 4);
  EXPECT_EQ(p.observers, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(p.non_observers, (std::vector<NodeId>{2, 3}));
}

TEST(Partition, CompleteHasNoNonObservers) {
  const NetworkInstance inst(build_complete(6), std::vector<Role>(6, Role::Legitimate));
  for (NodeId q = 0; q < 6; ++q) EXPECT_TRUE(target_partition(inst, q).non_observers.empty());
}

TEST(Partition, CoversLegitimateSet) {
  const auto inst = attach_malicious(build_erdos_renyi_legit(15, 0.3, 2), 10, 0.2, 3);
  for (NodeId q = 0; q < inst.node_count(); ++q) {
    const auto p = target_partition(inst, q);
    std::vector<NodeId> both = p.observers;
    both.insert(both.end(), p.non_observers.begin(), p.non_observers.end());
    std::sort(both.begin(), both.end());
    EXPECT_EQ(both, inst.legitimate());
    EXPECT_FALSE(p.observers.empty());
    for (NodeId d : p.observers) EXPECT_TRUE(inst.graph().has_edge(q, d));
    for (NodeId c : p.non_observers) EXPECT_FALSE(inst.graph().has_edge(q, c));
  }
}

TEST(Scc, TarjanMatchesReachability) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 9;
    DirectedGraph g(n);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i != j && rng.bernoulli(0.2)) g.add_edge(i, j);
      }
    }
    // Two nodes share a component iff each reaches the other.
    std::vector<std::vector<int>> dist;
    for (NodeId i = 0; i < n; ++i) dist.push_back(bfs_distances(g, i));
    std::vector<int> comp(n, -1);
    const auto sccs = strongly_connected_components(g);
    for (std::size_t c = 0; c < sccs.size(); ++c) {
      for (NodeId v : sccs[c]) comp[v] = static_cast<int>(c);
    }
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        EXPECT_EQ(comp[i] == comp[j], dist[i][j] >= 0 && dist[j][i] >= 0);
      }
    }
    EXPECT_EQ(is_strongly_connected(g), sccs.size() == 1);
  }
}

TEST(Induced, Relabels) {
  const auto inst = oracle::small_example();
  const std::vector<NodeId> nodes = {2, 3, 0};
  const auto sub = induced_subgraph(inst.graph(), nodes);
  EXPECT_EQ(sub.node_count(), 3u);
  EXPECT_TRUE(sub.has_edge(0, 1));   // 2 -> 3
  EXPECT_TRUE(sub.has_edge(1, 2));   // 3 -> 0
  EXPECT_FALSE(sub.has_edge(2, 0));  // 0 -> 2 absent
}

TEST(EdgeList, RoundTrip) {
  const auto inst = attach_malicious(build_erdos_renyi_legit(12, 0.3, 4), 7, 0.25, 8);
  const std::string text = to_edge_list(inst);
  EXPECT_EQ(parse_edge_list(text), inst);
  EXPECT_EQ(text.find("0 0\n"), std::string::npos);
  EXPECT_NE(text.find("#role 0 legit"), std::string::npos);
  EXPECT_NE(text.find("#role 12 malicious"), std::string::npos);
}

TEST(EdgeList, CommentsAndBlankLinesIgnored) {
  const std::string text =
      "# a comment\n#role 0 legit\n#role 1 legit\n\n0 1\n1 0\n1 1\n";
  const auto inst = parse_edge_list(text);
  EXPECT_EQ(inst.node_count(), 2u);
  EXPECT_TRUE(inst.graph().has_edge(0, 1));
}

TEST(EdgeList, Malformed) {
  EXPECT_THROW(parse_edge_list("#role 0 legit\n0 x\n"), ParseError);
  EXPECT_THROW(parse_edge_list("#role 0 friendly\n"), ParseError);
  EXPECT_THROW(parse_edge_list("#role 0 legit\n0 3\n"), ParseError);
  EXPECT_THROW(load_edge_list("/nonexistent/file.edges"), Error);
}

TEST(EdgeList, FixtureFileMatchesBuiltIn) {
  const auto inst = load_edge_list(std::string(DTRUST_FIXTURE_DIR) + "/fig5_violation.edges");
  EXPECT_EQ(inst, assumption_violation_fixture());
  EXPECT_EQ(load_edge_list("@fig5"), assumption_violation_fixture());
  EXPECT_EQ(parse_edge_list(assumption_violation_fixture_text()), assumption_violation_fixture());
}
