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

#include "collcert/lp/linear_problem.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>

#include "collcert/errors.h"

namespace collcert::lp {

int LinearProblem::AddVariable(std::string name, VarKind kind, double lower,
                               double upper) {
  if (kind == VarKind::kBinary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw InputError("variable " + name + " needs finite bounds");
  }
  if (lower > upper) {
    throw InputError("variable " + name + " has lower bound above upper");
  }
  variables_.push_back({std::move(name), kind, lower, upper});
  objective_.push_back(0.0);
  return num_variables() - 1;
}

int LinearProblem::AddConstraint(std::vector<Term> terms, Comparator cmp,
                                 double rhs, std::string name) {
  if (!std::isfinite(rhs)) throw InputError("constraint rhs must be finite");
  std::vector<Term> merged;
  merged.reserve(terms.size());
  std::unordered_map<int, std::size_t> slot;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw InputError("constraint references undeclared variable " +
                       std::to_string(t.var));
    }
    if (!std::isfinite(t.coef)) {
      throw InputError("constraint coefficient must be finite");
    }
    auto [it, inserted] = slot.emplace(t.var, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  constraints_.push_back({std::move(name), std::move(merged), cmp, rhs});
  return num_constraints() - 1;
}

void LinearProblem::SetObjectiveCoefficient(int var, double coef) {
  objective_.at(var) = coef;
}

void LinearProblem::AddObjectiveCoefficient(int var, double coef) {
  objective_.at(var) += coef;
}

void LinearProblem::SetVariableBounds(int var, double lower, double upper) {
  Variable& v = variables_.at(var);
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower > upper) {
    throw InputError("invalid bounds for variable " + v.name);
  }
  v.lower = lower;
  v.upper = upper;
}

int LinearProblem::NumNonZeros() const {
  int total = 0;
  for (const Constraint& c : constraints_) {
    total += static_cast<int>(c.terms.size());
  }
  return total;
}

bool LinearProblem::HasIntegerVariables() const {
  return std::any_of(variables_.begin(), variables_.end(), [](const auto& v) {
    return v.kind != VarKind::kContinuous;
  });
}

LinearProblem LinearProblem::Relaxed() const {
  LinearProblem copy = *this;
  for (Variable& v : copy.variables_) v.kind = VarKind::kContinuous;
  return copy;
}

double LinearProblem::EvaluateObjective(std::span<const double> values) const {
  double total = objective_offset_;
  for (int j = 0; j < num_variables(); ++j) total += objective_[j] * values[j];
  return total;
}

double LinearProblem::MaxViolation(std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables_[j].lower - values[j]);
    worst = std::max(worst, values[j] - variables_[j].upper);
  }
  for (const Constraint& c : constraints_) {
    double activity = 0.0;
    for (const Term& t : c.terms) activity += t.coef * values[t.var];
    switch (c.cmp) {
      case Comparator::kLessEq:
        worst = std::max(worst, activity - c.rhs);
        break;
      case Comparator::kGreaterEq:
        worst = std::max(worst, c.rhs - activity);
        break;
      case Comparator::kEqual:
        worst = std::max(worst, std::abs(activity - c.rhs));
        break;
    }
  }
  return worst;
}

double LinearProblem::MaxIntegralityViolation(
    std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    if (variables_[j].kind == VarKind::kContinuous) continue;
    worst = std::max(worst, std::abs(values[j] - std::round(values[j])));
  }
  return worst;
}

}  // namespace collcert::lp
