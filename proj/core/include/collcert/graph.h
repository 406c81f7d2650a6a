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

#ifndef COLLCERT_GRAPH_H_
#define COLLCERT_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "collcert/budget.h"

namespace collcert {

using NodeId = int;
using NodePair = std::pair<NodeId, NodeId>;

// Attributed graph with binary features and binary (directed or undirected)
// adjacency. Immutable after construction.
//
// Undirected graphs store each edge once as (i, j) with i < j; HasEdge and the
// neighbor lists are symmetric. For directed graphs an edge (i, j) carries
// messages from i to j.
class Graph {
 public:
  // Validates and canonicalizes. Throws InputError on self-loops, duplicate
  // edges or attributes, and out-of-range indices or labels.
  static Graph Create(int num_nodes, int num_features, bool directed,
                      std::vector<NodePair> edges,
                      std::vector<NodePair> attributes,
                      std::optional<std::vector<int>> labels = std::nullopt);

  // Trusted construction from data that is already canonical: edges sorted,
  // unique, no self-loops, i < j when undirected; attribute rows sorted and
  // unique. Used by the sampler on hot paths.
  static Graph FromCanonical(int num_nodes, int num_features, bool directed,
                             std::vector<NodePair> edges,
                             std::vector<std::vector<int>> attribute_rows,
                             std::optional<std::vector<int>> labels);

  Graph() = default;

  int num_nodes() const { return num_nodes_; }
  int num_features() const { return num_features_; }
  bool directed() const { return directed_; }
  const std::vector<NodePair>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::optional<std::vector<int>>& labels() const { return labels_; }

  bool HasEdge(NodeId i, NodeId j) const;
  bool HasAttribute(NodeId node, int feature) const;

  // Sorted feature indices set to 1 in `node`'s row.
  std::span<const int> AttributeRow(NodeId node) const {
    return attribute_rows_[node];
  }
  const std::vector<std::vector<int>>& attribute_rows() const {
    return attribute_rows_;
  }
  std::vector<NodePair> AttributeList() const;
  std::int64_t NumAttributeBits() const;

  // Nodes m with an edge m -> node (all neighbors when undirected).
  std::span<const NodeId> InNeighbors(NodeId node) const {
    return in_neighbors_[node];
  }
  // Nodes m with an edge node -> m (all neighbors when undirected).
  std::span<const NodeId> OutNeighbors(NodeId node) const {
    return out_neighbors_[node];
  }
  // Number of clean edges touching `node` in either direction.
  int IncidentEdgeCount(NodeId node) const;

  // dist[m] = length of the shortest path m -> target following edge
  // direction, or -1 if it exceeds max_hops.
  std::vector<int> HopDistancesTo(NodeId target, int max_hops) const;

  // Canonical key for an adjacency position (sorted when undirected).
  NodePair CanonicalPosition(NodeId i, NodeId j) const;

 private:
  void BuildAdjacency();

  int num_nodes_ = 0;
  int num_features_ = 0;
  bool directed_ = false;
  std::vector<NodePair> edges_;
  std::vector<std::vector<int>> attribute_rows_;
  std::vector<std::vector<NodeId>> in_neighbors_;
  std::vector<std::vector<NodeId>> out_neighbors_;
  std::optional<std::vector<int>> labels_;
};

// Adversary constraints: global budgets, optional per-node local budgets and
// an optional limit on the number of attacker-controlled nodes.
struct ThreatModel {
  BudgetVector global;
  std::optional<std::vector<int>> local_x_add;
  std::optional<std::vector<int>> local_x_del;
  std::optional<std::vector<int>> local_a_add;
  std::optional<std::vector<int>> local_a_del;
  std::optional<int> sigma;
  // When set, must agree with the graph's directedness.
  std::optional<bool> directed;

  const std::optional<std::vector<int>>& Local(PerturbationType type) const;
  std::optional<std::vector<int>>& Local(PerturbationType type);

  bool HasLocalBudgets() const;
  bool HasLocalEdgeBudgets() const;
  // r_Aadd > 0 or any local a_add entry > 0.
  bool AllowsEdgeAddition() const;
  // Local cap for `node`, or nullopt when unbounded.
  std::optional<int> LocalCap(PerturbationType type, NodeId node) const;

  // Throws InputError unless budgets are non-negative, local vectors have
  // length num_nodes, 0 <= sigma <= num_nodes and `directed` (if set)
  // matches.
  void Validate(int num_nodes, bool graph_directed) const;
};

// Data that can influence one node's prediction under a threat model.
class ReceptiveField {
 public:
  static ReceptiveField Global(NodeId owner, int num_nodes, bool directed);
  static ReceptiveField Local(NodeId owner, int num_nodes, bool directed,
                              std::vector<NodeId> nodes,
                              std::vector<NodePair> edge_positions);

  ReceptiveField() = default;

  NodeId owner() const { return owner_; }
  bool is_global() const { return global_; }
  bool ContainsNode(NodeId node) const;
  // (i, j) is canonicalized for undirected graphs.
  bool ContainsEdgePosition(NodeId i, NodeId j) const;
  // Sorted; for a global field every node.
  const std::vector<NodeId>& nodes() const { return nodes_; }
  // Sorted canonical clean-edge positions; empty for a global field (query
  // with ContainsEdgePosition instead).
  const std::vector<NodePair>& edge_positions() const { return edges_; }

 private:
  NodeId owner_ = 0;
  int num_nodes_ = 0;
  bool directed_ = false;
  bool global_ = false;
  std::vector<NodeId> nodes_;
  std::vector<char> node_mask_;
  std::vector<NodePair> edges_;
};

// Receptive field of a `layers`-layer message-passing model at node `n`.
// Any permitted edge addition makes the field global; otherwise it is the
// k-hop in-neighborhood plus every clean edge whose target end lies within
// k - 1 hops (either end, when undirected).
ReceptiveField ComputeReceptiveField(const Graph& graph, NodeId n, int layers,
                                     const ThreatModel& tm);

struct PerturbationCounts {
  BudgetVector global;
  std::vector<int> node_x_add;
  std::vector<int> node_x_del;
  std::vector<int> node_a_add;
  std::vector<int> node_a_del;
  // Rows with at least one changed attribute bit.
  std::vector<NodeId> attribute_rows;
  // Canonical positions of flipped adjacency entries.
  std::vector<NodePair> flipped_edges;
};

// Exact flip counts between two graphs of equal shape. An edge flip counts
// once globally and once toward each endpoint's local tally (directed graphs
// included: local adjacency budgets cap all incident edges).
PerturbationCounts CountPerturbations(const Graph& clean,
                                      const Graph& perturbed);

// Whether `perturbed` is reachable from `clean` under `tm`: all global and
// local budgets hold and some node set of size <= sigma covers every changed
// attribute row and at least one endpoint of every flipped edge.
bool IsAdmissible(const Graph& clean, const Graph& perturbed,
                  const ThreatModel& tm);

// JSON I/O. Loaders throw InputError with file/line or field context.
Graph LoadGraph(const std::filesystem::path& path);
Graph ParseGraphJson(const std::string& text, const std::string& origin);
std::string GraphToJson(const Graph& graph);
void SaveGraph(const Graph& graph, const std::filesystem::path& path);

ThreatModel LoadThreatModel(const std::filesystem::path& path);
ThreatModel ParseThreatModelJson(const std::string& text,
                                 const std::string& origin);
std::string ThreatModelToJson(const ThreatModel& tm);

}  // namespace collcert

#endif  // COLLCERT_GRAPH_H_
