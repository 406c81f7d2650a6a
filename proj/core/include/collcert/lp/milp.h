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

#ifndef COLLCERT_LP_MILP_H_
#define COLLCERT_LP_MILP_H_

#include "collcert/lp/linear_problem.h"
#include "collcert/lp/simplex.h"

namespace collcert::lp {

// Best-first branch-and-bound over the integer-kind variables of `problem`.
//
// Nodes are explored in order of (bound, creation order). The branching
// variable is the one whose fractional part is closest to 0.5, ties going to
// the lowest index. Child LPs warm-start from the parent's optimal basis. A
// node is pruned once its bound reaches the incumbent minus 1e-9.
//
// On reaching options.max_nodes the status is kIterationLimit; `values` then
// holds the incumbent (if any) and `dual_bound` the smallest open bound.
Solution SolveMilp(const LinearProblem& problem,
                   const SolverOptions& options = {});

}  // namespace collcert::lp

#endif  // COLLCERT_LP_MILP_H_
