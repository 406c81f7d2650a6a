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

#include "collcert/budget.h"

#include <sstream>

namespace collcert {

std::string_view ToString(PerturbationType type) {
  switch (type) {
    case PerturbationType::kAttributeAdd:
      return "x_add";
    case PerturbationType::kAttributeDelete:
      return "x_del";
    case PerturbationType::kEdgeAdd:
      return "a_add";
    case PerturbationType::kEdgeDelete:
      return "a_del";
  }
  return "unknown";
}

std::optional<PerturbationType> ParsePerturbationType(std::string_view name) {
  for (PerturbationType type : kAllPerturbationTypes) {
    if (ToString(type) == name) return type;
  }
  return std::nullopt;
}

int BudgetVector::operator[](PerturbationType type) const {
  switch (type) {
    case PerturbationType::kAttributeAdd:
      return x_add;
    case PerturbationType::kAttributeDelete:
      return x_del;
    case PerturbationType::kEdgeAdd:
      return a_add;
    case PerturbationType::kEdgeDelete:
      return a_del;
  }
  return 0;
}

int& BudgetVector::operator[](PerturbationType type) {
  switch (type) {
    case PerturbationType::kAttributeAdd:
      return x_add;
    case PerturbationType::kAttributeDelete:
      return x_del;
    case PerturbationType::kEdgeAdd:
      return a_add;
    case PerturbationType::kEdgeDelete:
      break;
  }
  return a_del;
}

int BudgetVector::NumNonZero() const {
  return (x_add != 0) + (x_del != 0) + (a_add != 0) + (a_del != 0);
}

BudgetVector BudgetVector::Unit(PerturbationType type, int amount) {
  BudgetVector v;
  v[type] = amount;
  return v;
}

bool ComponentwiseLessEq(const BudgetVector& a, const BudgetVector& b) {
  return a.x_add <= b.x_add && a.x_del <= b.x_del && a.a_add <= b.a_add &&
         a.a_del <= b.a_del;
}

std::string ToString(const BudgetVector& budget) {
  std::ostringstream out;
  out << "(" << budget.x_add << "," << budget.x_del << "," << budget.a_add
      << "," << budget.a_del << ")";
  return out.str();
}

}  // namespace collcert
