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

#ifndef COLLCERT_LP_LINEAR_PROBLEM_H_
#define COLLCERT_LP_LINEAR_PROBLEM_H_

#include <span>
#include <string>
#include <vector>

namespace collcert::lp {

enum class VarKind { kContinuous, kBinary, kInteger };
enum class Comparator { kLessEq, kGreaterEq, kEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;
};

struct Term {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Comparator cmp = Comparator::kLessEq;
  double rhs = 0.0;
};

// Minimization problem over bounded variables with sparse linear rows.
class LinearProblem {
 public:
  // Binary variables are clamped to [0, 1]. Throws InputError on lower >
  // upper or non-finite bounds.
  int AddVariable(std::string name, VarKind kind, double lower, double upper);

  // Duplicate variable references are merged and exact zeros dropped; the
  // stored row keeps first-occurrence order.
  int AddConstraint(std::vector<Term> terms, Comparator cmp, double rhs,
                    std::string name = "");

  void SetObjectiveCoefficient(int var, double coef);
  void AddObjectiveCoefficient(int var, double coef);
  void SetObjectiveOffset(double offset) { objective_offset_ = offset; }
  void SetVariableBounds(int var, double lower, double upper);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(int var) const { return variables_[var]; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Constraint& constraint(int row) const { return constraints_[row]; }
  // Dense objective, one coefficient per variable.
  const std::vector<double>& objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }
  int NumNonZeros() const;

  bool HasIntegerVariables() const;
  // Same problem with every variable continuous.
  LinearProblem Relaxed() const;

  double EvaluateObjective(std::span<const double> values) const;
  // Largest absolute violation over all rows and variable bounds.
  double MaxViolation(std::span<const double> values) const;
  // Largest distance to the nearest integer over integer-kind variables.
  double MaxIntegralityViolation(std::span<const double> values) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<double> objective_;
  double objective_offset_ = 0.0;
};

}  // namespace collcert::lp

#endif  // COLLCERT_LP_LINEAR_PROBLEM_H_
