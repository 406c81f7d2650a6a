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

#include "collcert/pareto.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "collcert/errors.h"
#include "internal/json_util.h"

namespace collcert {

using internal::GetField;
using internal::Json;

namespace {

constexpr int kMaxBoxComponent = 65535;

std::uint64_t PackBudget(const BudgetVector& b) {
  return static_cast<std::uint64_t>(b.x_add) |
         static_cast<std::uint64_t>(b.x_del) << 16 |
         static_cast<std::uint64_t>(b.a_add) << 32 |
         static_cast<std::uint64_t>(b.a_del) << 48;
}

int Total(const BudgetVector& b) { return b.x_add + b.x_del + b.a_add + b.a_del; }

BudgetVector ParseBudget(const Json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 4) {
    throw InputError(where + ": expected an array of four integers");
  }
  BudgetVector b;
  try {
    b = {value[0].get<int>(), value[1].get<int>(), value[2].get<int>(),
         value[3].get<int>()};
  } catch (const Json::exception&) {
    throw InputError(where + ": expected an array of four integers");
  }
  if (!b.IsNonNegative()) throw InputError(where + ": negative component");
  return b;
}

nlohmann::ordered_json BudgetToJson(const BudgetVector& b) {
  return nlohmann::ordered_json::array({b.x_add, b.x_del, b.a_add, b.a_del});
}

}  // namespace

bool BaseCertificate::Certifies(const BudgetVector& budget) const {
  return std::none_of(front.begin(), front.end(), [&](const BudgetVector& p) {
    return ComponentwiseLessEq(p, budget);
  });
}

void BaseCertificate::Validate() const {
  const std::string where = "node " + std::to_string(node);
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (front[i].IsZero()) throw InputError(where + ": origin uncertifiable");
    if (!front[i].IsNonNegative()) {
      throw InputError(where + ": negative front point " + ToString(front[i]));
    }
    if (!ComponentwiseLessEq(front[i], budget_box)) {
      throw InputError(where + ": front point outside budget box " +
                       ToString(front[i]));
    }
    for (std::size_t j = 0; j < front.size(); ++j) {
      if (i != j && ComponentwiseLessEq(front[j], front[i])) {
        throw InputError(where + ": dominated front point " +
                         ToString(front[i]));
      }
    }
  }
}

BaseCertificate ComputeFront(const CertificationOracle& oracle,
                             const BudgetVector& box, NodeId node,
                             FrontStats* stats) {
  for (PerturbationType axis : kAllPerturbationTypes) {
    if (box[axis] < 0 || box[axis] > kMaxBoxComponent) {
      throw InputError("budget box component out of range: " + ToString(box));
    }
  }
  FrontStats local_stats;
  std::unordered_map<std::uint64_t, bool> memo;
  auto query = [&](const BudgetVector& b) {
    ++local_stats.oracle_calls;
    const bool certified = oracle(b);
    memo.emplace(PackBudget(b), certified);
    return certified;
  };
  auto lookup = [&](const BudgetVector& b) -> const bool* {
    auto it = memo.find(PackBudget(b));
    return it == memo.end() ? nullptr : &it->second;
  };
  // A certified point above an uncertified one (or the reverse) is a
  // monotonicity violation; only neighbors already queried are inspected.
  auto check_neighbors = [&](const BudgetVector& b, bool certified) {
    for (PerturbationType axis : kAllPerturbationTypes) {
      if (certified && b[axis] > 0) {
        BudgetVector lower = b;
        --lower[axis];
        if (const bool* value = lookup(lower); value && !*value) {
          throw MonotonicityError("oracle certifies " + ToString(b) +
                                  " but not the smaller " + ToString(lower));
        }
      }
      if (!certified && b[axis] < box[axis]) {
        BudgetVector upper = b;
        ++upper[axis];
        if (const bool* value = lookup(upper); value && *value) {
          throw MonotonicityError("oracle certifies " + ToString(upper) +
                                  " but not the smaller " + ToString(b));
        }
      }
    }
  };

  const BudgetVector origin;
  if (!query(origin)) throw InputError("origin uncertifiable");
  ++local_stats.certified_points;
  std::vector<BudgetVector> stack = {origin};
  std::vector<BudgetVector> boundary;
  while (!stack.empty()) {
    const BudgetVector point = stack.back();
    stack.pop_back();
    for (PerturbationType axis : kAllPerturbationTypes) {
      if (point[axis] >= box[axis]) continue;
      BudgetVector next = point;
      ++next[axis];
      if (lookup(next) != nullptr) continue;
      const bool certified = query(next);
      check_neighbors(next, certified);
      if (certified) {
        ++local_stats.certified_points;
        stack.push_back(next);
      } else {
        boundary.push_back(next);
      }
    }
  }
  local_stats.boundary_points = static_cast<std::int64_t>(boundary.size());

  // Processing by increasing total means any dominating collected point is
  // already decided; transitivity lets us compare against survivors only.
  std::sort(boundary.begin(), boundary.end(),
            [](const BudgetVector& a, const BudgetVector& b) {
              const int ta = Total(a);
              const int tb = Total(b);
              return ta != tb ? ta < tb : a < b;
            });
  BaseCertificate cert;
  cert.node = node;
  cert.budget_box = box;
  for (const BudgetVector& candidate : boundary) {
    const bool dominated = std::any_of(
        cert.front.begin(), cert.front.end(), [&](const BudgetVector& kept) {
          return ComponentwiseLessEq(kept, candidate);
        });
    if (!dominated) cert.front.push_back(candidate);
  }
  std::sort(cert.front.begin(), cert.front.end());
  if (stats != nullptr) *stats = local_stats;
  return cert;
}

std::optional<int> SmallestUncertifiableRadius(
    const CertificationOracle& oracle, PerturbationType axis, int r_max) {
  if (r_max < 0) throw InputError("r_max must be non-negative");
  auto certified_at = [&](int r) {
    return oracle(BudgetVector::Unit(axis, r));
  };
  if (certified_at(r_max)) return std::nullopt;
  int lo = 0;  // Certified radius, or one below the first candidate.
  int hi = r_max;
  if (!certified_at(0)) return 0;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (certified_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

BaseCertificate FrontCollection::CertificateFor(NodeId node) const {
  BaseCertificate cert;
  cert.node = node;
  cert.budget_box = budget_box;
  if (auto it = fronts.find(node); it != fronts.end()) cert.front = it->second;
  return cert;
}

FrontCollection MakeFrontCollection(
    const std::vector<BaseCertificate>& certificates) {
  FrontCollection collection;
  if (certificates.empty()) return collection;
  collection.budget_box = certificates.front().budget_box;
  for (const BaseCertificate& cert : certificates) {
    if (cert.budget_box != collection.budget_box) {
      throw InputError("certificates disagree on the budget box");
    }
    cert.Validate();
    if (!collection.fronts.emplace(cert.node, cert.front).second) {
      throw InputError("duplicate certificate for node " +
                       std::to_string(cert.node));
    }
  }
  return collection;
}

FrontCollection ParseFrontsJson(const std::string& text,
                                const std::string& origin) {
  const Json doc = internal::ParseJsonText(text, origin);
  if (!doc.is_object()) throw InputError(origin + ": expected a JSON object");
  if (!doc.contains("budget_box")) {
    throw InputError(origin + ": missing field \"budget_box\"");
  }
  FrontCollection collection;
  collection.budget_box =
      ParseBudget(doc.at("budget_box"), origin + ": budget_box");
  if (!doc.contains("fronts") || !doc.at("fronts").is_object()) {
    throw InputError(origin + ": field \"fronts\" must be an object");
  }
  for (const auto& [key, points] : doc.at("fronts").items()) {
    const std::string where = origin + ": fronts[" + key + "]";
    NodeId node = 0;
    try {
      std::size_t used = 0;
      node = std::stoi(key, &used);
      if (used != key.size() || node < 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InputError(where + ": key is not a node id");
    }
    if (!points.is_array()) throw InputError(where + ": expected an array");
    BaseCertificate cert;
    cert.node = node;
    cert.budget_box = collection.budget_box;
    for (std::size_t i = 0; i < points.size(); ++i) {
      cert.front.push_back(
          ParseBudget(points[i], where + "[" + std::to_string(i) + "]"));
    }
    std::sort(cert.front.begin(), cert.front.end());
    try {
      cert.Validate();
    } catch (const InputError& e) {
      throw InputError(origin + ": " + e.what());
    }
    if (!collection.fronts.emplace(node, std::move(cert.front)).second) {
      throw InputError(where + ": duplicate node");
    }
  }
  return collection;
}

FrontCollection LoadFronts(const std::filesystem::path& path) {
  return ParseFrontsJson(internal::ReadTextFile(path), path.string());
}

std::string FrontsToJson(const FrontCollection& fronts) {
  nlohmann::ordered_json doc;
  doc["budget_box"] = BudgetToJson(fronts.budget_box);
  nlohmann::ordered_json map = nlohmann::ordered_json::object();
  for (const auto& [node, points] : fronts.fronts) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const BudgetVector& p : points) list.push_back(BudgetToJson(p));
    map[std::to_string(node)] = std::move(list);
  }
  doc["fronts"] = std::move(map);
  return doc.dump(1) + "\n";
}

void SaveFronts(const FrontCollection& fronts,
                const std::filesystem::path& path) {
  internal::WriteTextFile(path, FrontsToJson(fronts));
}

}  // namespace collcert
