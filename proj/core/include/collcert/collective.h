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

#ifndef COLLCERT_COLLECTIVE_H_
#define COLLCERT_COLLECTIVE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "collcert/budget.h"
#include "collcert/graph.h"
#include "collcert/lp/linear_problem.h"
#include "collcert/lp/simplex.h"
#include "collcert/pareto.h"

namespace collcert {

struct CertOptions {
  // Solve the LP relaxation instead of the mixed-integer problem.
  bool relaxed = false;
  // Two edge variables per undirected pair with the exclusion row and merged
  // attacker rows. Defaults to on for undirected graphs; setting it on a
  // directed graph is an error.
  std::optional<bool> undirected_vars;
  // Use the compact single-axis problem whenever it applies.
  bool allow_fast_path = true;
  lp::SolverOptions solver;
};

// Everything needed to bound the number of simultaneously robust targets.
// `certs` and `fields` are aligned with `targets`.
struct CertInstance {
  Graph graph;
  ThreatModel tm;
  std::vector<NodeId> targets;
  std::vector<BaseCertificate> certs;
  std::vector<ReceptiveField> fields;
  int layers = 1;
  CertOptions options;

  // Throws InputError on shape mismatches, duplicate or out-of-range
  // targets, fronts whose box does not cover tm.global, and undirected_vars
  // on a directed graph.
  void Validate() const;

  bool UsesUndirectedVars() const;
};

// Builds an instance, computing receptive fields from `layers` and looking up
// each target's certificate through `cert_for`.
CertInstance MakeInstance(
    Graph graph, ThreatModel tm, std::vector<NodeId> targets,
    const std::function<BaseCertificate(NodeId)>& cert_for, int layers,
    CertOptions options = {});

// Targets whose front has no point inside the global budget box.
int NaiveCertificate(const CertInstance& inst);

// Front points that lie inside the global budget box; the others can never
// be reached by in-field perturbations.
std::vector<BudgetVector> ReachableFront(const BaseCertificate& cert,
                                         const BudgetVector& global);

// Whether BuildProblem emits the compact single-axis form: exactly one
// nonzero global budget, no local budgets, no attacker limit.
bool UsesFastPath(const CertInstance& inst);

// Column indices of the built problem; -1 where a group is absent.
struct ProblemLayout {
  bool fast_path = false;
  std::vector<int> t;       // per node
  std::vector<int> b_add;   // per node
  std::vector<int> b_del;   // per node
  std::vector<int> attacker;  // per node
  struct EdgeVar {
    NodeId from = 0;
    NodeId to = 0;
    bool addition = false;
    int column = 0;
  };
  // Directed or single-variable mode: (from, to) is the position. Merged
  // undirected mode: two entries per pair, `from` is the charged endpoint.
  std::vector<EdgeVar> edges;
};

struct BuiltProblem {
  lp::LinearProblem problem;
  ProblemLayout layout;
};

// Collective certificate problem: minimize |T| - sum_{n in T} t_n where t_n
// may be 1 only if the perturbation mass inside n's receptive field reaches
// some point of n's front in all four dimensions.
BuiltProblem BuildProblem(const CertInstance& inst);

struct ProblemSize {
  std::int64_t constraints = 0;  // rows plus variable domains
  std::int64_t variables = 0;
  std::int64_t rows = 0;

  friend bool operator==(const ProblemSize&, const ProblemSize&) = default;
};

// Size of a built problem, counting each variable domain as one constraint.
ProblemSize MeasureProblem(const lp::LinearProblem& problem);

// Closed-form size of the problem BuildProblem emits for `inst`.
ProblemSize ExpectedProblemSize(const CertInstance& inst);

struct CertWitness {
  std::vector<double> b_add;   // per node
  std::vector<double> b_del;   // per node
  struct EdgeFlip {
    NodeId from = 0;
    NodeId to = 0;
    bool addition = false;
    double amount = 0.0;
  };
  std::vector<EdgeFlip> edge_flips;
  std::vector<NodeId> attackers;
  // Targets the adversary claims (t_n > 0.5).
  std::vector<NodeId> attacked_targets;
};

struct CertResult {
  int certified_count = 0;
  double objective = 0.0;
  lp::SolveStatus status = lp::SolveStatus::kOptimal;
  CertWitness witness;
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
};

// Builds and solves the problem. certified_count = ceil(bound - 1e-6) where
// bound is the optimum, or the branch-and-bound dual bound at the node limit,
// or 0 when no valid bound is available; clamped to [0, |T|].
CertResult Certify(const CertInstance& inst);

struct SweepRow {
  int radius = 0;
  int collective = 0;
  int naive = 0;
  double objective = 0.0;
  lp::SolveStatus status = lp::SolveStatus::kOptimal;
  double seconds = 0.0;
};

// Certifies `base` with tm.global[axis] set to each radius in turn. Radii are
// solved concurrently on up to `num_threads` threads (0 = hardware
// concurrency); rows come back in input order.
std::vector<SweepRow> Sweep(const CertInstance& base, PerturbationType axis,
                            const std::vector<int>& radii,
                            int num_threads = 0);

std::string CertResultToJson(const CertResult& result);

}  // namespace collcert

#endif  // COLLCERT_COLLECTIVE_H_
