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

#ifndef COLLCERT_PARETO_H_
#define COLLCERT_PARETO_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collcert/budget.h"
#include "collcert/graph.h"

namespace collcert {

// Membership oracle of a base certificate's certifiable budget set. Must be
// monotone: certified budgets stay certified when any component shrinks.
using CertificationOracle = std::function<bool(const BudgetVector&)>;

// Base certificate of one prediction, stored as the pareto front of minimal
// uncertifiable budgets inside `budget_box`.
struct BaseCertificate {
  NodeId node = 0;
  // Sorted lexicographically; an antichain that excludes the origin.
  std::vector<BudgetVector> front;
  BudgetVector budget_box;

  // True iff no front point is componentwise <= budget.
  bool Certifies(const BudgetVector& budget) const;

  // Throws InputError naming the violated invariant: "origin uncertifiable",
  // "dominated front point" or "front point outside budget box".
  void Validate() const;

  friend bool operator==(const BaseCertificate&,
                         const BaseCertificate&) = default;
};

struct FrontStats {
  std::int64_t oracle_calls = 0;
  std::int64_t certified_points = 0;
  std::int64_t boundary_points = 0;
};

// Flood fill over the lattice [0, box] starting at the origin, expanding only
// through certified points, followed by reduction of the collected
// uncertified boundary to its minimal elements. Each lattice point is queried
// at most once.
//
// Throws InputError when the origin is uncertified or a box component
// exceeds 65535, and MonotonicityError when the oracle is caught
// contradicting monotonicity between two neighboring points.
BaseCertificate ComputeFront(const CertificationOracle& oracle,
                             const BudgetVector& box, NodeId node = 0,
                             FrontStats* stats = nullptr);

// Least r in [0, r_max] at which the oracle fails along `axis`, found by
// binary search; nullopt when certified through r_max.
std::optional<int> SmallestUncertifiableRadius(
    const CertificationOracle& oracle, PerturbationType axis, int r_max);

// A fronts file: a shared budget box and per-node fronts. Nodes without an
// entry are certified everywhere in the box.
struct FrontCollection {
  BudgetVector budget_box;
  std::map<NodeId, std::vector<BudgetVector>> fronts;

  BaseCertificate CertificateFor(NodeId node) const;
};

FrontCollection MakeFrontCollection(
    const std::vector<BaseCertificate>& certificates);

FrontCollection LoadFronts(const std::filesystem::path& path);
FrontCollection ParseFrontsJson(const std::string& text,
                                const std::string& origin);
std::string FrontsToJson(const FrontCollection& fronts);
void SaveFronts(const FrontCollection& fronts,
                const std::filesystem::path& path);

}  // namespace collcert

#endif  // COLLCERT_PARETO_H_
