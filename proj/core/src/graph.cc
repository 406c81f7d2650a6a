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
#include <deque>
#include <set>
#include <string>

#include "collcert/errors.h"

namespace collcert {
namespace {

std::string PairString(const NodePair& p) {
  return "[" + std::to_string(p.first) + "," + std::to_string(p.second) + "]";
}

// Exact check whether `edges` admit a vertex cover of size <= budget.
// Branches on the two endpoints of the first uncovered edge; states that
// already failed at a given budget are memoized.
class VertexCoverSearch {
 public:
  explicit VertexCoverSearch(std::vector<NodePair> edges)
      : edges_(std::move(edges)) {}

  bool CoverableWithin(int budget) {
    std::vector<NodeId> chosen;
    return Search(chosen, budget);
  }

 private:
  bool Search(std::vector<NodeId>& chosen, int budget) {
    const NodePair* uncovered = nullptr;
    for (const NodePair& e : edges_) {
      if (!Contains(chosen, e.first) && !Contains(chosen, e.second)) {
        uncovered = &e;
        break;
      }
    }
    if (uncovered == nullptr) return true;
    if (budget == 0) return false;
    std::vector<NodeId> key = chosen;
    std::sort(key.begin(), key.end());
    if (failed_.count(key)) return false;
    for (NodeId pick : {uncovered->first, uncovered->second}) {
      chosen.push_back(pick);
      const bool ok = Search(chosen, budget - 1);
      chosen.pop_back();
      if (ok) return true;
    }
    failed_.insert(std::move(key));
    return false;
  }

  static bool Contains(const std::vector<NodeId>& v, NodeId x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  }

  std::vector<NodePair> edges_;
  std::set<std::vector<NodeId>> failed_;
};

}  // namespace

Graph Graph::Create(int num_nodes, int num_features, bool directed,
                    std::vector<NodePair> edges,
                    std::vector<NodePair> attributes,
                    std::optional<std::vector<int>> labels) {
  if (num_nodes < 0) throw InputError("num_nodes must be non-negative");
  if (num_features < 0) throw InputError("num_features must be non-negative");

  for (NodePair& e : edges) {
    if (e.first < 0 || e.first >= num_nodes || e.second < 0 ||
        e.second >= num_nodes) {
      throw InputError("edge " + PairString(e) + " has an out-of-range index");
    }
    if (e.first == e.second) {
      throw InputError("self-loop at node " + std::to_string(e.first));
    }
    if (!directed && e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end());
      dup != edges.end()) {
    throw InputError(directed ? "duplicate edge " + PairString(*dup)
                              : "duplicate edge under canonicalization " +
                                    PairString(*dup));
  }

  std::vector<std::vector<int>> rows(num_nodes);
  for (const NodePair& a : attributes) {
    if (a.first < 0 || a.first >= num_nodes || a.second < 0 ||
        a.second >= num_features) {
      throw InputError("attribute " + PairString(a) +
                       " has an out-of-range index");
    }
    rows[a.first].push_back(a.second);
  }
  for (NodeId n = 0; n < num_nodes; ++n) {
    auto& row = rows[n];
    std::sort(row.begin(), row.end());
    if (auto dup = std::adjacent_find(row.begin(), row.end());
        dup != row.end()) {
      throw InputError("duplicate attribute " + PairString({n, *dup}));
    }
  }

  if (labels) {
    if (static_cast<int>(labels->size()) != num_nodes) {
      throw InputError("labels must have one entry per node");
    }
    for (int label : *labels) {
      if (label < 0) throw InputError("labels must be non-negative");
    }
  }
  return FromCanonical(num_nodes, num_features, directed, std::move(edges),
                       std::move(rows), std::move(labels));
}

Graph Graph::FromCanonical(int num_nodes, int num_features, bool directed,
                           std::vector<NodePair> edges,
                           std::vector<std::vector<int>> attribute_rows,
                           std::optional<std::vector<int>> labels) {
  Graph g;
  g.num_nodes_ = num_nodes;
  g.num_features_ = num_features;
  g.directed_ = directed;
  g.edges_ = std::move(edges);
  g.attribute_rows_ = std::move(attribute_rows);
  g.attribute_rows_.resize(num_nodes);
  g.labels_ = std::move(labels);
  g.BuildAdjacency();
  return g;
}

void Graph::BuildAdjacency() {
  in_neighbors_.assign(num_nodes_, {});
  out_neighbors_.assign(num_nodes_, {});
  for (const auto& [i, j] : edges_) {
    out_neighbors_[i].push_back(j);
    in_neighbors_[j].push_back(i);
    if (!directed_) {
      out_neighbors_[j].push_back(i);
      in_neighbors_[i].push_back(j);
    }
  }
  for (auto& v : in_neighbors_) std::sort(v.begin(), v.end());
  for (auto& v : out_neighbors_) std::sort(v.begin(), v.end());
}

bool Graph::HasEdge(NodeId i, NodeId j) const {
  if (i < 0 || i >= num_nodes_ || j < 0 || j >= num_nodes_) return false;
  const auto& out = out_neighbors_[i];
  return std::binary_search(out.begin(), out.end(), j);
}

bool Graph::HasAttribute(NodeId node, int feature) const {
  const auto& row = attribute_rows_[node];
  return std::binary_search(row.begin(), row.end(), feature);
}

std::vector<NodePair> Graph::AttributeList() const {
  std::vector<NodePair> out;
  for (NodeId n = 0; n < num_nodes_; ++n) {
    for (int f : attribute_rows_[n]) out.emplace_back(n, f);
  }
  return out;
}

std::int64_t Graph::NumAttributeBits() const {
  std::int64_t total = 0;
  for (const auto& row : attribute_rows_) total += row.size();
  return total;
}

int Graph::IncidentEdgeCount(NodeId node) const {
  if (!directed_) return static_cast<int>(out_neighbors_[node].size());
  return static_cast<int>(out_neighbors_[node].size() +
                          in_neighbors_[node].size());
}

std::vector<int> Graph::HopDistancesTo(NodeId target, int max_hops) const {
  std::vector<int> dist(num_nodes_, -1);
  dist[target] = 0;
  std::deque<NodeId> queue = {target};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (dist[v] == max_hops) continue;
    for (NodeId u : in_neighbors_[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

NodePair Graph::CanonicalPosition(NodeId i, NodeId j) const {
  if (!directed_ && i > j) return {j, i};
  return {i, j};
}

// --- ThreatModel ---

const std::optional<std::vector<int>>& ThreatModel::Local(
    PerturbationType type) const {
  switch (type) {
    case PerturbationType::kAttributeAdd:
      return local_x_add;
    case PerturbationType::kAttributeDelete:
      return local_x_del;
    case PerturbationType::kEdgeAdd:
      return local_a_add;
    case PerturbationType::kEdgeDelete:
      break;
  }
  return local_a_del;
}

std::optional<std::vector<int>>& ThreatModel::Local(PerturbationType type) {
  const auto& self = *this;
  return const_cast<std::optional<std::vector<int>>&>(self.Local(type));
}

bool ThreatModel::HasLocalBudgets() const {
  return local_x_add || local_x_del || local_a_add || local_a_del;
}

bool ThreatModel::HasLocalEdgeBudgets() const {
  return local_a_add || local_a_del;
}

bool ThreatModel::AllowsEdgeAddition() const {
  if (global.a_add > 0) return true;
  if (local_a_add) {
    return std::any_of(local_a_add->begin(), local_a_add->end(),
                       [](int r) { return r > 0; });
  }
  return false;
}

std::optional<int> ThreatModel::LocalCap(PerturbationType type,
                                         NodeId node) const {
  const auto& local = Local(type);
  if (!local) return std::nullopt;
  return (*local)[node];
}

void ThreatModel::Validate(int num_nodes, bool graph_directed) const {
  if (!global.IsNonNegative()) {
    throw InputError("global budgets must be non-negative");
  }
  for (PerturbationType type : kAllPerturbationTypes) {
    const auto& local = Local(type);
    if (!local) continue;
    if (static_cast<int>(local->size()) != num_nodes) {
      throw InputError("local_" + std::string(ToString(type)) +
                       " must have one entry per node");
    }
    if (std::any_of(local->begin(), local->end(),
                    [](int r) { return r < 0; })) {
      throw InputError("local_" + std::string(ToString(type)) +
                       " must be non-negative");
    }
  }
  if (sigma && (*sigma < 0 || *sigma > num_nodes)) {
    throw InputError("sigma must lie in [0, num_nodes]");
  }
  if (directed && *directed != graph_directed) {
    throw InputError("threat model directedness does not match the graph");
  }
}

// --- ReceptiveField ---

ReceptiveField ReceptiveField::Global(NodeId owner, int num_nodes,
                                      bool directed) {
  ReceptiveField field;
  field.owner_ = owner;
  field.num_nodes_ = num_nodes;
  field.directed_ = directed;
  field.global_ = true;
  field.nodes_.resize(num_nodes);
  for (NodeId n = 0; n < num_nodes; ++n) field.nodes_[n] = n;
  field.node_mask_.assign(num_nodes, 1);
  return field;
}

ReceptiveField ReceptiveField::Local(NodeId owner, int num_nodes,
                                     bool directed, std::vector<NodeId> nodes,
                                     std::vector<NodePair> edge_positions) {
  ReceptiveField field;
  field.owner_ = owner;
  field.num_nodes_ = num_nodes;
  field.directed_ = directed;
  field.node_mask_.assign(num_nodes, 0);
  nodes.push_back(owner);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (NodeId n : nodes) field.node_mask_[n] = 1;
  field.nodes_ = std::move(nodes);
  if (!directed) {
    for (auto& e : edge_positions) {
      if (e.first > e.second) std::swap(e.first, e.second);
    }
  }
  std::sort(edge_positions.begin(), edge_positions.end());
  edge_positions.erase(
      std::unique(edge_positions.begin(), edge_positions.end()),
      edge_positions.end());
  field.edges_ = std::move(edge_positions);
  return field;
}

bool ReceptiveField::ContainsNode(NodeId node) const {
  return node >= 0 && node < num_nodes_ && node_mask_[node] != 0;
}

bool ReceptiveField::ContainsEdgePosition(NodeId i, NodeId j) const {
  if (global_) return true;
  if (!directed_ && i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), NodePair{i, j});
}

ReceptiveField ComputeReceptiveField(const Graph& graph, NodeId n, int layers,
                                     const ThreatModel& tm) {
  if (layers < 1) throw InputError("layer count must be at least 1");
  if (n < 0 || n >= graph.num_nodes()) {
    throw InputError("node " + std::to_string(n) + " out of range");
  }
  if (tm.AllowsEdgeAddition()) {
    return ReceptiveField::Global(n, graph.num_nodes(), graph.directed());
  }
  const std::vector<int> dist = graph.HopDistancesTo(n, layers);
  std::vector<NodeId> nodes;
  for (NodeId m = 0; m < graph.num_nodes(); ++m) {
    if (dist[m] >= 0) nodes.push_back(m);
  }
  auto within = [&](NodeId m) { return dist[m] >= 0 && dist[m] <= layers - 1; };
  std::vector<NodePair> positions;
  for (const auto& [i, j] : graph.edges()) {
    const bool inside = graph.directed() ? within(j) : (within(i) || within(j));
    if (inside) positions.emplace_back(i, j);
  }
  return ReceptiveField::Local(n, graph.num_nodes(), graph.directed(),
                               std::move(nodes), std::move(positions));
}

// --- Admissibility ---

namespace {

void CheckSameShape(const Graph& a, const Graph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_features() != b.num_features() ||
      a.directed() != b.directed()) {
    throw InputError("graphs differ in shape (nodes, features or directedness)");
  }
}

}  // namespace

PerturbationCounts CountPerturbations(const Graph& clean,
                                      const Graph& perturbed) {
  CheckSameShape(clean, perturbed);
  const int n = clean.num_nodes();
  PerturbationCounts counts;
  counts.node_x_add.assign(n, 0);
  counts.node_x_del.assign(n, 0);
  counts.node_a_add.assign(n, 0);
  counts.node_a_del.assign(n, 0);

  for (NodeId node = 0; node < n; ++node) {
    auto before = clean.AttributeRow(node);
    auto after = perturbed.AttributeRow(node);
    std::vector<int> added;
    std::vector<int> deleted;
    std::set_difference(after.begin(), after.end(), before.begin(),
                        before.end(), std::back_inserter(added));
    std::set_difference(before.begin(), before.end(), after.begin(),
                        after.end(), std::back_inserter(deleted));
    counts.node_x_add[node] = static_cast<int>(added.size());
    counts.node_x_del[node] = static_cast<int>(deleted.size());
    counts.global.x_add += counts.node_x_add[node];
    counts.global.x_del += counts.node_x_del[node];
    if (!added.empty() || !deleted.empty()) {
      counts.attribute_rows.push_back(node);
    }
  }

  std::vector<NodePair> added_edges;
  std::vector<NodePair> deleted_edges;
  const auto& before = clean.edges();
  const auto& after = perturbed.edges();
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                      std::back_inserter(added_edges));
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::back_inserter(deleted_edges));
  for (const auto& [i, j] : added_edges) {
    ++counts.node_a_add[i];
    ++counts.node_a_add[j];
  }
  for (const auto& [i, j] : deleted_edges) {
    ++counts.node_a_del[i];
    ++counts.node_a_del[j];
  }
  counts.global.a_add = static_cast<int>(added_edges.size());
  counts.global.a_del = static_cast<int>(deleted_edges.size());
  counts.flipped_edges = added_edges;
  counts.flipped_edges.insert(counts.flipped_edges.end(),
                              deleted_edges.begin(), deleted_edges.end());
  std::sort(counts.flipped_edges.begin(), counts.flipped_edges.end());
  return counts;
}

bool IsAdmissible(const Graph& clean, const Graph& perturbed,
                  const ThreatModel& tm) {
  CheckSameShape(clean, perturbed);
  tm.Validate(clean.num_nodes(), clean.directed());
  const PerturbationCounts counts = CountPerturbations(clean, perturbed);

  if (!ComponentwiseLessEq(counts.global, tm.global)) return false;
  const std::vector<int>* per_node[4] = {&counts.node_x_add, &counts.node_x_del,
                                         &counts.node_a_add, &counts.node_a_del};
  for (PerturbationType type : kAllPerturbationTypes) {
    const auto& local = tm.Local(type);
    if (!local) continue;
    const auto& used = *per_node[static_cast<int>(type)];
    for (NodeId node = 0; node < clean.num_nodes(); ++node) {
      if (used[node] > (*local)[node]) return false;
    }
  }

  if (!tm.sigma) return true;
  // Rows with attribute changes must be attacker-controlled; the remaining
  // edge flips need one controlled endpoint each.
  const auto& forced = counts.attribute_rows;
  const int remaining = *tm.sigma - static_cast<int>(forced.size());
  if (remaining < 0) return false;
  std::vector<NodePair> open_edges;
  for (const auto& e : counts.flipped_edges) {
    const bool covered =
        std::binary_search(forced.begin(), forced.end(), e.first) ||
        std::binary_search(forced.begin(), forced.end(), e.second);
    if (!covered) open_edges.push_back(e);
  }
  return VertexCoverSearch(std::move(open_edges)).CoverableWithin(remaining);
}

}  // namespace collcert
