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

#include "collcert/lp/milp.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <queue>
#include <utility>
#include <vector>

#include "lp/simplex_engine.h"

namespace collcert::lp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPruneTolerance = 1e-9;

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  double bound = -kInf;
  std::int64_t id = 0;
  std::vector<BoundChange> changes;
  std::shared_ptr<const internal::BasisState> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// True when every feasible point has an integral objective value.
bool HasIntegralObjective(const LinearProblem& problem) {
  if (problem.objective_offset() != std::round(problem.objective_offset())) {
    return false;
  }
  for (int j = 0; j < problem.num_variables(); ++j) {
    const double c = problem.objective()[j];
    if (c == 0.0) continue;
    if (problem.variable(j).kind == VarKind::kContinuous) return false;
    if (c != std::round(c)) return false;
  }
  return true;
}

int SelectBranchVariable(const LinearProblem& problem,
                         const std::vector<double>& values) {
  int best = -1;
  double best_distance = kInf;
  for (int j = 0; j < problem.num_variables(); ++j) {
    if (problem.variable(j).kind == VarKind::kContinuous) continue;
    const double frac = values[j] - std::floor(values[j]);
    if (frac <= kIntegralityTolerance || frac >= 1.0 - kIntegralityTolerance) {
      continue;
    }
    const double distance = std::abs(frac - 0.5);
    if (distance < best_distance) {
      best_distance = distance;
      best = j;
    }
  }
  return best;
}

}  // namespace

Solution SolveMilp(const LinearProblem& problem, const SolverOptions& options) {
  if (!problem.HasIntegerVariables()) return SolveLp(problem, options);

  const int n = problem.num_variables();
  const bool integral_objective = HasIntegralObjective(problem);
  auto strengthen = [&](double bound) {
    return integral_objective ? std::ceil(bound - kIntegralityTolerance)
                              : bound;
  };

  std::vector<double> root_lower(n);
  std::vector<double> root_upper(n);
  for (int j = 0; j < n; ++j) {
    const Variable& v = problem.variable(j);
    root_lower[j] = v.lower;
    root_upper[j] = v.upper;
    if (v.kind != VarKind::kContinuous) {
      root_lower[j] = std::ceil(v.lower - kIntegralityTolerance);
      root_upper[j] = std::floor(v.upper + kIntegralityTolerance);
    }
  }

  internal::SimplexEngine engine(problem, options.backend);
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push(Node{});
  std::int64_t next_id = 1;

  Solution best;
  best.status = SolveStatus::kInfeasible;
  double incumbent = kInf;
  // Bounds of nodes whose LP could not be solved to optimality; they stay
  // part of the dual bound.
  double unresolved_bound = kInf;
  std::int64_t nodes = 0;
  std::int64_t iterations = 0;

  std::vector<double> lower;
  std::vector<double> upper;
  while (!open.empty()) {
    if (nodes >= options.max_nodes) break;
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - kPruneTolerance) continue;
    ++nodes;

    lower = root_lower;
    upper = root_upper;
    for (const BoundChange& c : node.changes) {
      lower[c.var] = c.lower;
      upper[c.var] = c.upper;
    }
    internal::SimplexEngine::Result lp = engine.Solve(
        lower, upper, node.basis.get(), options.max_iterations);
    iterations += lp.iterations;
    if (lp.status == SolveStatus::kInfeasible) continue;
    if (lp.status != SolveStatus::kOptimal) {
      unresolved_bound = std::min(unresolved_bound, node.bound);
      continue;
    }
    const double bound = std::max(node.bound, strengthen(lp.objective));
    if (bound >= incumbent - kPruneTolerance) continue;

    const int branch = SelectBranchVariable(problem, lp.values);
    if (branch < 0) {
      std::vector<double> rounded = lp.values;
      for (int j = 0; j < n; ++j) {
        if (problem.variable(j).kind != VarKind::kContinuous) {
          rounded[j] = std::round(rounded[j]);
        }
      }
      if (problem.MaxViolation(rounded) <= kFeasibilityTolerance) {
        lp.values = std::move(rounded);
      }
      incumbent = problem.EvaluateObjective(lp.values);
      best.values = std::move(lp.values);
      best.objective = incumbent;
      best.status = SolveStatus::kOptimal;
      continue;
    }

    auto basis =
        std::make_shared<const internal::BasisState>(engine.CurrentBasis());
    const double value = lp.values[branch];
    Node down{bound, next_id++, node.changes, basis};
    down.changes.push_back({branch, lower[branch], std::floor(value)});
    Node up{bound, next_id++, std::move(node.changes), basis};
    up.changes.push_back({branch, std::ceil(value), upper[branch]});
    open.push(std::move(down));
    open.push(std::move(up));
  }

  double open_bound =
      unresolved_bound < incumbent - kPruneTolerance ? unresolved_bound : kInf;
  if (!open.empty() && open.top().bound < incumbent - kPruneTolerance) {
    open_bound = std::min(open_bound, open.top().bound);
  }
  best.nodes = nodes;
  best.iterations = iterations;
  const bool complete = open_bound == kInf;
  if (complete) {
    best.dual_bound = best.status == SolveStatus::kOptimal ? incumbent : kInf;
    return best;
  }
  best.status = SolveStatus::kIterationLimit;
  best.dual_bound = std::min(open_bound, incumbent);
  if (best.values.empty()) best.objective = kInf;
  return best;
}

}  // namespace collcert::lp
