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

#ifndef COLLCERT_LP_SIMPLEX_ENGINE_H_
#define COLLCERT_LP_SIMPLEX_ENGINE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "collcert/lp/linear_problem.h"
#include "collcert/lp/simplex.h"
#include "lp/basis_factor.h"

namespace collcert::lp::internal {

// Basis snapshot over structural and slack columns, used for warm starts.
struct BasisState {
  std::vector<int> basic;
  std::vector<char> at_upper;
};

// Bounded-variable primal simplex over the rows of a LinearProblem. Bounds
// on the structural variables can be overridden per solve, which is how
// branch-and-bound reuses one engine for all nodes.
class SimplexEngine {
 public:
  SimplexEngine(const LinearProblem& problem, FactorBackend backend);

  struct Result {
    SolveStatus status = SolveStatus::kInfeasible;
    double objective = 0.0;
    std::vector<double> values;
    std::int64_t iterations = 0;
  };

  // Cold start (artificial phase 1) when `warm` is null, otherwise restores
  // `warm` and runs a composite phase 1 if it is primal infeasible.
  Result Solve(std::span<const double> lower, std::span<const double> upper,
               const BasisState* warm, std::int64_t max_iterations);

  BasisState CurrentBasis() const;

 private:
  enum class Status : char { kBasic, kLower, kUpper };
  enum class Phase { kArtificial, kComposite, kOptimize };
  enum class Outcome { kDone, kInfeasible, kUnbounded, kIterationLimit };

  void ColdStart();
  void WarmStart(const BasisState& warm);
  void Refactorize();
  void ComputeBasicValues();
  double BasicInfeasibility() const;
  Outcome Run(Phase phase);
  double PhaseCost(Phase phase, int col) const;
  void Column(int col, std::vector<double>& dense) const;

  const LinearProblem& problem_;
  int num_structural_ = 0;
  int num_rows_ = 0;
  int slack_offset_ = 0;
  int artificial_offset_ = 0;
  ColumnMatrix matrix_;
  std::vector<double> rhs_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> x_;
  std::vector<Status> status_;
  std::vector<int> head_;
  std::unique_ptr<BasisFactor> factor_;
  std::int64_t iterations_ = 0;
  std::int64_t max_iterations_ = 0;
};

}  // namespace collcert::lp::internal

#endif  // COLLCERT_LP_SIMPLEX_ENGINE_H_
