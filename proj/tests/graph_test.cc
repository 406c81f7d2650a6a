// Copyright 2026 The collcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "collcert/graph.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "collcert/errors.h"
#include "gtest/gtest.h"
#include "support/generators.h"

namespace collcert {
namespace {

Graph Path(int n, bool directed = false) {
  std::vector<NodePair> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::Create(n, 1, directed, edges, {});
}

TEST(GraphIoTest, LoadsSmallGraph) {
  const Graph g = ParseGraphJson(
      R"({"num_nodes": 3, "num_features": 2, "directed": false,
          "edges": [[0,1],[1,2]], "attributes": [[0,0]]})",
      "inline");
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.NumAttributeBits(), 1);
  EXPECT_TRUE(g.HasEdge(2, 1));
  EXPECT_TRUE(g.HasAttribute(0, 0));
}

TEST(GraphIoTest, RejectsSelfLoop) {
  try {
    ParseGraphJson(R"({"num_nodes": 2, "num_features": 1, "directed": true,
                       "edges": [[0,0]], "attributes": []})",
                   "inline");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(GraphIoTest, RejectsDuplicateUndirectedEdge) {
  try {
    ParseGraphJson(R"({"num_nodes": 2, "num_features": 1, "directed": false,
                       "edges": [[0,1],[1,0]], "attributes": []})",
                   "inline");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(
                  "duplicate edge under canonicalization"),
              std::string::npos);
  }
}

TEST(GraphIoTest, ReportsLineOfParseError) {
  try {
    ParseGraphJson("{\n\"num_nodes\": 2,\n\"num_features\": ,\n}", "g.json");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("g.json:3"), std::string::npos);
  }
}

TEST(GraphIoTest, RejectsOutOfRangeAndDuplicates) {
  EXPECT_THROW(ParseGraphJson(R"({"num_nodes": 2, "num_features": 1,
      "directed": true, "edges": [[0,2]], "attributes": []})", "x"),
               InputError);
  EXPECT_THROW(ParseGraphJson(R"({"num_nodes": 2, "num_features": 1,
      "directed": true, "edges": [], "attributes": [[0,0],[0,0]]})", "x"),
               InputError);
  EXPECT_THROW(ParseGraphJson(R"({"num_nodes": 2, "num_features": 1,
      "directed": true, "edges": [], "attributes": [], "labels": [0]})", "x"),
               InputError);
  EXPECT_THROW(ParseGraphJson(R"({"num_nodes": 2, "directed": true,
      "edges": [], "attributes": []})", "x"),
               InputError);
}

TEST(GraphIoTest, RoundTrip) {
  std::mt19937_64 rng(5);
  for (bool directed : {false, true}) {
    const Graph g = testing::RandomGraph(rng, 7, 4, directed, 0.3, 0.4);
    const Graph back = ParseGraphJson(GraphToJson(g), "rt");
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_EQ(back.attribute_rows(), g.attribute_rows());
    EXPECT_EQ(back.directed(), g.directed());
  }
}

TEST(ThreatModelIoTest, ParsesAndValidates) {
  const ThreatModel tm = ParseThreatModelJson(
      R"({"global": {"x_add": 1, "x_del": 2, "a_add": 0, "a_del": 3},
          "local_x_add": [1, 1, 0], "local_x_del": null,
          "local_a_add": null, "local_a_del": null, "sigma": 2})",
      "tm");
  EXPECT_EQ(tm.global, (BudgetVector{1, 2, 0, 3}));
  ASSERT_TRUE(tm.local_x_add.has_value());
  EXPECT_EQ(tm.sigma, 2);
  EXPECT_NO_THROW(tm.Validate(3, false));
  EXPECT_THROW(tm.Validate(4, false), InputError);
  const ThreatModel back = ParseThreatModelJson(ThreatModelToJson(tm), "rt");
  EXPECT_EQ(back.global, tm.global);
  EXPECT_EQ(back.local_x_add, tm.local_x_add);
  EXPECT_EQ(back.sigma, tm.sigma);
}

TEST(ReceptiveFieldTest, PathEndpoint) {
  const ReceptiveField f = ComputeReceptiveField(Path(5), 0, 2, ThreatModel{});
  EXPECT_EQ(f.nodes(), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(f.edge_positions(), (std::vector<NodePair>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(f.is_global());
}

TEST(ReceptiveFieldTest, PathCenter) {
  const ReceptiveField f = ComputeReceptiveField(Path(5), 2, 2, ThreatModel{});
  EXPECT_EQ(f.nodes(), (std::vector<NodeId>{0, 1, 2, 3, 4}));
  EXPECT_EQ(f.edge_positions().size(), 4u);
  EXPECT_TRUE(f.ContainsEdgePosition(4, 3));
}

TEST(ReceptiveFieldTest, EdgeAdditionMakesFieldGlobal) {
  ThreatModel tm;
  tm.global.a_add = 1;
  const ReceptiveField f = ComputeReceptiveField(Path(5), 0, 1, tm);
  EXPECT_TRUE(f.is_global());
  EXPECT_TRUE(f.ContainsNode(4));
  EXPECT_TRUE(f.ContainsEdgePosition(3, 0));

  ThreatModel local;
  local.local_a_add = std::vector<int>{0, 0, 1, 0, 0};
  EXPECT_TRUE(ComputeReceptiveField(Path(5), 0, 1, local).is_global());
}

TEST(ReceptiveFieldTest, DirectedFollowsMessageFlow) {
  // 0 -> 1 -> 2: node 2 hears from 1 and 0, node 0 from nobody.
  const Graph g = Path(3, /*directed=*/true);
  const ReceptiveField at2 = ComputeReceptiveField(g, 2, 2, ThreatModel{});
  EXPECT_EQ(at2.nodes(), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_TRUE(at2.ContainsEdgePosition(0, 1));
  EXPECT_TRUE(at2.ContainsEdgePosition(1, 2));
  const ReceptiveField at0 = ComputeReceptiveField(g, 0, 2, ThreatModel{});
  EXPECT_EQ(at0.nodes(), (std::vector<NodeId>{0}));
  EXPECT_TRUE(at0.edge_positions().empty());
}

TEST(ReceptiveFieldTest, MonotoneInLayers) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const bool directed = trial % 2 == 1;
    const Graph g = testing::RandomGraph(rng, 8, 1, directed, 0.2, 0.0);
    for (NodeId n = 0; n < g.num_nodes(); ++n) {
      for (int k = 1; k < 4; ++k) {
        const auto small = ComputeReceptiveField(g, n, k, ThreatModel{});
        const auto large = ComputeReceptiveField(g, n, k + 1, ThreatModel{});
        EXPECT_TRUE(std::includes(large.nodes().begin(), large.nodes().end(),
                                  small.nodes().begin(), small.nodes().end()));
        EXPECT_TRUE(small.ContainsNode(n));
      }
    }
  }
}

TEST(ReceptiveFieldTest, DeletingEdgesNeverEnlargesField) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const bool directed = trial % 2 == 0;
    const Graph g = testing::RandomGraph(rng, 8, 1, directed, 0.25, 0.0);
    for (const NodePair& e : g.edges()) {
      const Graph smaller = testing::WithoutEdge(g, e);
      for (NodeId n = 0; n < g.num_nodes(); ++n) {
        const auto before = ComputeReceptiveField(g, n, 2, ThreatModel{});
        const auto after = ComputeReceptiveField(smaller, n, 2, ThreatModel{});
        EXPECT_TRUE(std::includes(before.nodes().begin(), before.nodes().end(),
                                  after.nodes().begin(), after.nodes().end()));
      }
    }
  }
}

TEST(PerturbationCountsTest, Examples) {
  const Graph clean = Graph::Create(4, 2, false, {{0, 1}}, {{3, 1}});
  const auto same = CountPerturbations(clean, clean);
  EXPECT_TRUE(same.global.IsZero());

  const Graph deleted = Graph::Create(4, 2, false, {{0, 1}}, {});
  const auto del = CountPerturbations(clean, deleted);
  EXPECT_EQ(del.global, (BudgetVector{0, 1, 0, 0}));
  EXPECT_EQ(del.node_x_del[3], 1);

  const Graph added = Graph::Create(4, 2, false, {{0, 1}, {1, 2}}, {{3, 1}});
  const auto add = CountPerturbations(clean, added);
  EXPECT_EQ(add.global, (BudgetVector{0, 0, 1, 0}));
  EXPECT_EQ(add.node_a_add[1], 1);
  EXPECT_EQ(add.node_a_add[2], 1);
  EXPECT_EQ(add.node_a_add[0], 0);
}

TEST(AdmissibilityTest, Examples) {
  const Graph clean = Graph::Create(3, 2, false, {{0, 1}, {1, 2}}, {});
  ThreatModel tm;
  EXPECT_TRUE(IsAdmissible(clean, clean, tm));

  const Graph flipped = Graph::Create(3, 2, false, {{0, 1}, {1, 2}}, {{0, 0}});
  EXPECT_FALSE(IsAdmissible(clean, flipped, tm));

  const Graph deleted = Graph::Create(3, 2, false, {{1, 2}}, {});
  ThreatModel one_attacker;
  one_attacker.global.a_del = 1;
  one_attacker.sigma = 1;
  EXPECT_TRUE(IsAdmissible(clean, deleted, one_attacker));

  const Graph both = Graph::Create(3, 2, false, {}, {{2, 0}});
  ThreatModel loose;
  loose.global = {1, 0, 0, 2};
  loose.sigma = 1;
  // Node 2 must be controlled for the attribute; it also covers edge (1,2)
  // but not (0,1).
  EXPECT_FALSE(IsAdmissible(clean, both, loose));
  loose.sigma = 2;
  EXPECT_TRUE(IsAdmissible(clean, both, loose));
}

TEST(AdmissibilityTest, LocalEdgeBudgetsCountBothEndpoints) {
  const Graph clean = Graph::Create(3, 1, true, {{0, 1}, {2, 1}}, {});
  const Graph perturbed = Graph::Create(3, 1, true, {}, {});
  ThreatModel tm;
  tm.global.a_del = 2;
  tm.local_a_del = std::vector<int>{1, 2, 1};
  EXPECT_TRUE(IsAdmissible(clean, perturbed, tm));
  tm.local_a_del = std::vector<int>{1, 1, 1};
  EXPECT_FALSE(IsAdmissible(clean, perturbed, tm));
}

TEST(AdmissibilityTest, IdentityAndMonotonicity) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> budget(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const bool directed = trial % 2 == 0;
    const Graph g = testing::RandomGraph(rng, 5, 2, directed, 0.3, 0.4);
    ThreatModel tm;
    tm.global = {budget(rng), budget(rng), budget(rng), budget(rng)};
    tm.sigma = budget(rng);
    tm.local_a_del = std::vector<int>(5, budget(rng));
    EXPECT_TRUE(IsAdmissible(g, g, tm));
    for (const Graph& h : testing::SingleFlipNeighbors(g)) {
      if (!IsAdmissible(g, h, tm)) continue;
      ThreatModel looser = tm;
      looser.global.x_add += 1;
      looser.global.a_del += 1;
      looser.sigma = *tm.sigma + 1;
      for (int& r : *looser.local_a_del) ++r;
      EXPECT_TRUE(IsAdmissible(g, h, looser));
      ThreatModel unlimited = tm;
      unlimited.sigma.reset();
      unlimited.local_a_del.reset();
      EXPECT_TRUE(IsAdmissible(g, h, unlimited));
    }
  }
}

TEST(AdmissibilityTest, ShapeMismatchThrows) {
  const Graph a = Graph::Create(2, 1, false, {}, {});
  const Graph b = Graph::Create(3, 1, false, {}, {});
  EXPECT_THROW(IsAdmissible(a, b, ThreatModel{}), InputError);
}

}  // namespace
}  // namespace collcert
