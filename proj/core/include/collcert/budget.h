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

#ifndef COLLCERT_BUDGET_H_
#define COLLCERT_BUDGET_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace collcert {

// The four kinds of bit flips an adversary can make.
enum class PerturbationType : int {
  kAttributeAdd = 0,
  kAttributeDelete = 1,
  kEdgeAdd = 2,
  kEdgeDelete = 3,
};

inline constexpr std::array<PerturbationType, 4> kAllPerturbationTypes = {
    PerturbationType::kAttributeAdd, PerturbationType::kAttributeDelete,
    PerturbationType::kEdgeAdd, PerturbationType::kEdgeDelete};

// "x_add", "x_del", "a_add", "a_del".
std::string_view ToString(PerturbationType type);
std::optional<PerturbationType> ParsePerturbationType(std::string_view name);

inline bool IsAttributeType(PerturbationType type) {
  return type == PerturbationType::kAttributeAdd ||
         type == PerturbationType::kAttributeDelete;
}

// Number of flipped bits per perturbation type. Used both for adversarial
// budgets and for points on a base certificate's pareto front.
struct BudgetVector {
  int x_add = 0;
  int x_del = 0;
  int a_add = 0;
  int a_del = 0;

  int operator[](PerturbationType type) const;
  int& operator[](PerturbationType type);

  bool IsZero() const { return x_add == 0 && x_del == 0 && a_add == 0 && a_del == 0; }
  bool IsNonNegative() const {
    return x_add >= 0 && x_del >= 0 && a_add >= 0 && a_del >= 0;
  }
  int NumNonZero() const;

  static BudgetVector Unit(PerturbationType type, int amount = 1);

  friend bool operator==(const BudgetVector&, const BudgetVector&) = default;
  // Lexicographic in (x_add, x_del, a_add, a_del); used only for canonical
  // ordering of fronts, not for dominance.
  friend auto operator<=>(const BudgetVector&, const BudgetVector&) = default;
};

// a <= b in every component.
bool ComponentwiseLessEq(const BudgetVector& a, const BudgetVector& b);

std::string ToString(const BudgetVector& budget);

}  // namespace collcert

#endif  // COLLCERT_BUDGET_H_
