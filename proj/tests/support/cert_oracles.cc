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

#include "support/cert_oracles.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "support/generators.h"

namespace collcert::testing {
namespace {

struct Position {
  NodeId from;
  NodeId to;
  bool addition;
};

class Enumerator {
 public:
  explicit Enumerator(const CertInstance& inst) : inst_(inst) {
    const Graph& g = inst.graph;
    n_ = g.num_nodes();
    for (const NodePair& e : g.edges()) {
      positions_.push_back({e.first, e.second, false});
    }
    if (inst.tm.global.a_add > 0) {
      for (NodeId i = 0; i < n_; ++i) {
        for (NodeId j = g.directed() ? 0 : i + 1; j < n_; ++j) {
          if (i != j && !g.HasEdge(i, j)) positions_.push_back({i, j, true});
        }
      }
    }
    for (NodeId node = 0; node < n_; ++node) {
      const int ones = static_cast<int>(g.AttributeRow(node).size());
      cap_add_.push_back(Cap(PerturbationType::kAttributeAdd, node,
                             g.num_features() - ones));
      cap_del_.push_back(Cap(PerturbationType::kAttributeDelete, node, ones));
    }
    for (std::size_t i = 0; i < inst.targets.size(); ++i) {
      fronts_.push_back(ReachableFront(inst.certs[i], inst.tm.global));
    }
    b_add_.assign(n_, 0);
    b_del_.assign(n_, 0);
  }

  int Run(std::int64_t* leaves) {
    best_ = static_cast<int>(inst_.targets.size());
    AssignAttributes(0, inst_.tm.global.x_add, inst_.tm.global.x_del);
    if (leaves != nullptr) *leaves = leaves_;
    return best_;
  }

 private:
  int Cap(PerturbationType type, NodeId node, int capacity) const {
    const auto local = inst_.tm.LocalCap(type, node);
    return local ? std::min(*local, capacity) : capacity;
  }

  void AssignAttributes(NodeId node, int left_add, int left_del) {
    if (node == n_) {
      flipped_.clear();
      ChooseEdges(0, inst_.tm.global.a_add, inst_.tm.global.a_del);
      return;
    }
    for (int a = 0; a <= std::min(left_add, cap_add_[node]); ++a) {
      for (int d = 0; d <= std::min(left_del, cap_del_[node]); ++d) {
        b_add_[node] = a;
        b_del_[node] = d;
        AssignAttributes(node + 1, left_add - a, left_del - d);
      }
    }
    b_add_[node] = 0;
    b_del_[node] = 0;
  }

  void ChooseEdges(std::size_t index, int left_add, int left_del) {
    if (index == positions_.size()) {
      Evaluate();
      return;
    }
    ChooseEdges(index + 1, left_add, left_del);
    const Position& p = positions_[index];
    if ((p.addition ? left_add : left_del) == 0) return;
    flipped_.push_back(index);
    ChooseEdges(index + 1, left_add - (p.addition ? 1 : 0),
                left_del - (p.addition ? 0 : 1));
    flipped_.pop_back();
  }

  bool LocalEdgeBudgetsHold() const {
    for (bool addition : {false, true}) {
      const PerturbationType type = addition ? PerturbationType::kEdgeAdd
                                             : PerturbationType::kEdgeDelete;
      if (!inst_.tm.Local(type)) continue;
      std::vector<int> tally(n_, 0);
      for (std::size_t k : flipped_) {
        if (positions_[k].addition != addition) continue;
        ++tally[positions_[k].from];
        ++tally[positions_[k].to];
      }
      for (NodeId node = 0; node < n_; ++node) {
        if (tally[node] > *inst_.tm.LocalCap(type, node)) return false;
      }
    }
    return true;
  }

  bool AttackersSuffice() const {
    if (!inst_.tm.sigma) return true;
    unsigned forced = 0;
    for (NodeId node = 0; node < n_; ++node) {
      if (b_add_[node] > 0 || b_del_[node] > 0) forced |= 1u << node;
    }
    const int sigma = *inst_.tm.sigma;
    for (unsigned set = 0; set < (1u << n_); ++set) {
      if ((set & forced) != forced || std::popcount(set) > sigma) continue;
      const bool covers = std::all_of(
          flipped_.begin(), flipped_.end(), [&](std::size_t k) {
            return ((set >> positions_[k].from) & 1u) ||
                   ((set >> positions_[k].to) & 1u);
          });
      if (covers) return true;
    }
    return false;
  }

  void Evaluate() {
    ++leaves_;
    int certified = 0;
    for (std::size_t i = 0; i < inst_.targets.size(); ++i) {
      const ReceptiveField& field = inst_.fields[i];
      BudgetVector mass;
      for (NodeId m : field.nodes()) {
        mass.x_add += b_add_[m];
        mass.x_del += b_del_[m];
      }
      for (std::size_t k : flipped_) {
        const Position& p = positions_[k];
        if (field.ContainsEdgePosition(p.from, p.to)) {
          ++(p.addition ? mass.a_add : mass.a_del);
        }
      }
      const bool broken = std::any_of(
          fronts_[i].begin(), fronts_[i].end(),
          [&](const BudgetVector& q) { return ComponentwiseLessEq(q, mass); });
      if (!broken) ++certified;
    }
    if (certified >= best_) return;
    if (!LocalEdgeBudgetsHold() || !AttackersSuffice()) return;
    best_ = certified;
  }

  const CertInstance& inst_;
  int n_ = 0;
  std::vector<Position> positions_;
  std::vector<int> cap_add_;
  std::vector<int> cap_del_;
  std::vector<std::vector<BudgetVector>> fronts_;
  std::vector<int> b_add_;
  std::vector<int> b_del_;
  std::vector<std::size_t> flipped_;
  int best_ = 0;
  std::int64_t leaves_ = 0;
};

}  // namespace

int BruteForceCollective(const CertInstance& inst,
                         std::int64_t* leaves_visited) {
  return Enumerator(inst).Run(leaves_visited);
}

CertInstance RandomCertInstance(std::mt19937_64& rng,
                                const RandomInstanceOptions& options) {
  std::bernoulli_distribution coin(0.5);
  const bool additions =
      std::bernoulli_distribution(options.addition_prob)(rng);
  const int max_nodes = additions ? std::min(options.max_nodes, 4)
                                  : options.max_nodes;
  const int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
  const int d = std::uniform_int_distribution<int>(1, 3)(rng);
  const bool directed = coin(rng);

  std::vector<NodePair> positions;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = directed ? 0 : i + 1; j < n; ++j) {
      if (i != j) positions.emplace_back(i, j);
    }
  }
  std::shuffle(positions.begin(), positions.end(), rng);
  const int num_edges = std::uniform_int_distribution<int>(
      0, std::min<int>(options.max_edges, positions.size()))(rng);
  positions.resize(num_edges);
  std::vector<NodePair> attributes;
  std::bernoulli_distribution bit(0.4);
  for (NodeId node = 0; node < n; ++node) {
    for (int f = 0; f < d; ++f) {
      if (bit(rng)) attributes.emplace_back(node, f);
    }
  }
  Graph graph = Graph::Create(n, d, directed, positions, attributes);

  std::uniform_int_distribution<int> budget(0, options.max_budget);
  ThreatModel tm;
  tm.global = {budget(rng), budget(rng), additions ? 1 + budget(rng) % 2 : 0,
               budget(rng)};
  std::uniform_int_distribution<int> local(0, 2);
  for (PerturbationType type : kAllPerturbationTypes) {
    if (std::bernoulli_distribution(options.local_prob)(rng)) {
      std::vector<int> caps(n);
      for (int& c : caps) c = local(rng);
      tm.Local(type) = std::move(caps);
    }
  }
  if (std::bernoulli_distribution(options.sigma_prob)(rng)) {
    tm.sigma = std::uniform_int_distribution<int>(0, n)(rng);
  }

  std::vector<NodeId> targets;
  for (NodeId node = 0; node < n; ++node) {
    if (std::bernoulli_distribution(0.8)(rng)) targets.push_back(node);
  }
  if (targets.empty()) targets.push_back(0);
  const int layers = std::uniform_int_distribution<int>(1, 2)(rng);

  const BudgetVector box = tm.global;
  std::vector<std::vector<BudgetVector>> fronts;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    fronts.push_back(RandomFront(rng, box, options.max_front_points));
  }
  std::size_t next = 0;
  return MakeInstance(
      std::move(graph), std::move(tm), std::move(targets),
      [&](NodeId node) {
        return BaseCertificate{node, fronts[next++], box};
      },
      layers);
}

}  // namespace collcert::testing
