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

#ifndef COLLCERT_LP_SIMPLEX_H_
#define COLLCERT_LP_SIMPLEX_H_

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "collcert/lp/linear_problem.h"

namespace collcert::lp {

// Absolute primal feasibility tolerance for rows and basic variables.
inline constexpr double kFeasibilityTolerance = 1e-7;
// Distance to the nearest integer accepted as integral.
inline constexpr double kIntegralityTolerance = 1e-6;
// Slack allowed on variable bounds in returned points.
inline constexpr double kBoundGuard = 1e-9;

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view ToString(SolveStatus status);

enum class FactorBackend {
  kAuto,    // dense inverse up to kDenseColumnLimit columns, eta file above
  kDense,
  kSparse,
};

// Structural plus logical columns handled by the dense backend in kAuto.
inline constexpr int kDenseColumnLimit = 2000;

struct SolverOptions {
  std::int64_t max_iterations = 1'000'000;
  std::int64_t max_nodes = 100'000;
  FactorBackend backend = FactorBackend::kAuto;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  // Best proven lower bound on the minimum. Equals `objective` for optimal
  // LP solves.
  double dual_bound = -std::numeric_limits<double>::infinity();
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
};

// Solves the continuous relaxation of `problem` (integer kinds ignored) with
// a bounded-variable primal simplex method.
Solution SolveLp(const LinearProblem& problem,
                 const SolverOptions& options = {});

}  // namespace collcert::lp

#endif  // COLLCERT_LP_SIMPLEX_H_
