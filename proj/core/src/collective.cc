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

#include "collcert/collective.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "collcert/errors.h"
#include "collcert/lp/milp.h"
#include "internal/json_util.h"

namespace collcert {

using lp::Comparator;
using lp::Term;
using lp::VarKind;

namespace {

constexpr double kCountGuard = 1e-6;

std::string Suffix(NodeId a) { return "_" + std::to_string(a); }
std::string Suffix(NodeId a, NodeId b) { return Suffix(a) + Suffix(b); }

// Every adjacency position that is not a clean edge, canonical when
// undirected, in lexicographic order.
std::vector<NodePair> AddablePositions(const Graph& graph) {
  std::vector<NodePair> positions;
  const int n = graph.num_nodes();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = graph.directed() ? 0 : i + 1; j < n; ++j) {
      if (i != j && !graph.HasEdge(i, j)) positions.emplace_back(i, j);
    }
  }
  return positions;
}

int CapOr(const std::optional<int>& local, int capacity) {
  return local ? std::min(*local, capacity) : capacity;
}

struct EdgeGroup {
  std::vector<NodePair> positions;
  bool addition = false;
};

std::vector<EdgeGroup> EdgeGroups(const CertInstance& inst) {
  std::vector<EdgeGroup> groups;
  groups.push_back({inst.graph.edges(), false});
  if (inst.tm.global.a_add > 0) {
    groups.push_back({AddablePositions(inst.graph), true});
  }
  return groups;
}

// Adds the in-field perturbation mass of `type` for one receptive field to
// `row`.
void AppendFieldMass(const ProblemLayout& layout, const ReceptiveField& field,
                     PerturbationType type, std::vector<Term>& row) {
  switch (type) {
    case PerturbationType::kAttributeAdd:
    case PerturbationType::kAttributeDelete: {
      const std::vector<int>& vars = type == PerturbationType::kAttributeAdd
                                         ? layout.b_add
                                         : layout.b_del;
      for (NodeId m : field.nodes()) {
        if (vars[m] >= 0) row.push_back({vars[m], 1.0});
      }
      return;
    }
    case PerturbationType::kEdgeAdd:
    case PerturbationType::kEdgeDelete: {
      const bool addition = type == PerturbationType::kEdgeAdd;
      for (const ProblemLayout::EdgeVar& e : layout.edges) {
        if (e.addition == addition &&
            field.ContainsEdgePosition(e.from, e.to)) {
          row.push_back({e.column, 1.0});
        }
      }
      return;
    }
  }
}

int AttributeCapacity(const Graph& graph, NodeId node, bool addition) {
  const int ones = static_cast<int>(graph.AttributeRow(node).size());
  return addition ? graph.num_features() - ones : ones;
}

int IncidentPositions(const Graph& graph, NodeId node, bool addition) {
  const int clean = graph.IncidentEdgeCount(node);
  if (!addition) return clean;
  const int all = (graph.num_nodes() - 1) * (graph.directed() ? 2 : 1);
  return all - clean;
}

void SetTargetObjective(const CertInstance& inst, BuiltProblem& built) {
  built.problem.SetObjectiveOffset(static_cast<double>(inst.targets.size()));
  for (NodeId n : inst.targets) {
    built.problem.SetObjectiveCoefficient(built.layout.t[n], -1.0);
  }
}

BuiltProblem BuildFastPath(const CertInstance& inst) {
  const Graph& graph = inst.graph;
  const int n = graph.num_nodes();
  PerturbationType axis = PerturbationType::kAttributeAdd;
  for (PerturbationType type : kAllPerturbationTypes) {
    if (inst.tm.global[type] > 0) axis = type;
  }
  BuiltProblem built;
  lp::LinearProblem& p = built.problem;
  ProblemLayout& layout = built.layout;
  layout.fast_path = true;
  layout.t.assign(n, -1);
  layout.b_add.assign(n, -1);
  layout.b_del.assign(n, -1);
  layout.attacker.assign(n, -1);

  // Scalar smallest uncertifiable radius per target, or none.
  std::vector<int> radius(n, 0);
  for (std::size_t i = 0; i < inst.targets.size(); ++i) {
    const auto front = ReachableFront(inst.certs[i], inst.tm.global);
    if (!front.empty()) radius[inst.targets[i]] = front.front()[axis];
  }
  for (NodeId node = 0; node < n; ++node) {
    const bool open = radius[node] > 0;
    layout.t[node] = p.AddVariable("t" + Suffix(node), VarKind::kBinary, 0.0,
                                   open ? 1.0 : 0.0);
  }
  std::vector<Term> global_row;
  if (IsAttributeType(axis)) {
    const bool addition = axis == PerturbationType::kAttributeAdd;
    std::vector<int>& vars = addition ? layout.b_add : layout.b_del;
    for (NodeId node = 0; node < n; ++node) {
      vars[node] = p.AddVariable((addition ? "badd" : "bdel") + Suffix(node),
                                 VarKind::kInteger, 0.0,
                                 AttributeCapacity(graph, node, addition));
      global_row.push_back({vars[node], 1.0});
    }
  } else {
    const bool addition = axis == PerturbationType::kEdgeAdd;
    const std::vector<NodePair> positions =
        addition ? AddablePositions(graph) : graph.edges();
    for (const auto& [i, j] : positions) {
      const int col = p.AddVariable(
          (addition ? "eadd" : "edel") + Suffix(i, j), VarKind::kBinary, 0.0,
          1.0);
      layout.edges.push_back({i, j, addition, col});
      global_row.push_back({col, 1.0});
    }
  }
  for (NodeId node = 0; node < n; ++node) {
    std::vector<Term> row;
    const auto it = std::find(inst.targets.begin(), inst.targets.end(), node);
    if (it != inst.targets.end()) {
      AppendFieldMass(layout, inst.fields[it - inst.targets.begin()], axis,
                      row);
    }
    if (radius[node] > 0) {
      row.push_back({layout.t[node], -static_cast<double>(radius[node])});
    }
    p.AddConstraint(std::move(row), Comparator::kGreaterEq, 0.0,
                    "reach" + Suffix(node));
  }
  p.AddConstraint(std::move(global_row), Comparator::kLessEq,
                  inst.tm.global[axis],
                  "global_" + std::string(ToString(axis)));
  SetTargetObjective(inst, built);
  return built;
}

BuiltProblem BuildGeneral(const CertInstance& inst) {
  const Graph& graph = inst.graph;
  const ThreatModel& tm = inst.tm;
  const int n = graph.num_nodes();
  const bool merged = inst.UsesUndirectedVars();
  const std::vector<EdgeGroup> groups = EdgeGroups(inst);

  BuiltProblem built;
  lp::LinearProblem& p = built.problem;
  ProblemLayout& layout = built.layout;
  layout.t.resize(n);
  layout.b_add.resize(n);
  layout.b_del.resize(n);
  layout.attacker.resize(n);
  std::vector<int> cap_add(n);
  std::vector<int> cap_del(n);
  for (NodeId node = 0; node < n; ++node) {
    cap_add[node] = CapOr(tm.LocalCap(PerturbationType::kAttributeAdd, node),
                          AttributeCapacity(graph, node, true));
    cap_del[node] =
        CapOr(tm.LocalCap(PerturbationType::kAttributeDelete, node),
              AttributeCapacity(graph, node, false));
    layout.t[node] =
        p.AddVariable("t" + Suffix(node), VarKind::kBinary, 0.0, 1.0);
    layout.b_add[node] = p.AddVariable("badd" + Suffix(node),
                                       VarKind::kInteger, 0.0, cap_add[node]);
    layout.b_del[node] = p.AddVariable("bdel" + Suffix(node),
                                       VarKind::kInteger, 0.0, cap_del[node]);
    layout.attacker[node] =
        p.AddVariable("a" + Suffix(node), VarKind::kBinary, 0.0, 1.0);
  }
  for (const EdgeGroup& group : groups) {
    const std::string prefix = group.addition ? "eadd" : "edel";
    for (const auto& [i, j] : group.positions) {
      layout.edges.push_back(
          {i, j, group.addition,
           p.AddVariable(prefix + Suffix(i, j), VarKind::kBinary, 0.0, 1.0)});
      if (merged) {
        layout.edges.push_back(
            {j, i, group.addition,
             p.AddVariable(prefix + Suffix(j, i), VarKind::kBinary, 0.0,
                           1.0)});
      }
    }
  }

  // Front logic: Q_{p,d} only if the in-field mass reaches P_{p,d}; s_p
  // needs all four; t_n needs some s_p.
  std::vector<std::vector<Term>> t_rows(n);
  for (NodeId node = 0; node < n; ++node) {
    t_rows[node].push_back({layout.t[node], 1.0});
  }
  for (std::size_t i = 0; i < inst.targets.size(); ++i) {
    const NodeId target = inst.targets[i];
    const std::vector<BudgetVector> front =
        ReachableFront(inst.certs[i], tm.global);
    for (std::size_t k = 0; k < front.size(); ++k) {
      const std::string tag = Suffix(target, static_cast<NodeId>(k));
      int q[4];
      for (PerturbationType type : kAllPerturbationTypes) {
        const int d = static_cast<int>(type);
        const double level = front[k][type] == 0 ? 1.0 : 0.0;
        q[d] = p.AddVariable("q" + tag + Suffix(d), VarKind::kBinary, level,
                             1.0);
      }
      const int s = p.AddVariable("s" + tag, VarKind::kBinary, 0.0, 1.0);
      for (PerturbationType type : kAllPerturbationTypes) {
        const int d = static_cast<int>(type);
        std::vector<Term> row;
        AppendFieldMass(layout, inst.fields[i], type, row);
        if (front[k][type] > 0) row.push_back({q[d], -1.0 * front[k][type]});
        p.AddConstraint(std::move(row), Comparator::kGreaterEq, 0.0,
                        "reach" + tag + Suffix(d));
      }
      for (int d = 0; d < 4; ++d) {
        p.AddConstraint({{s, 1.0}, {q[d], -1.0}}, Comparator::kLessEq, 0.0,
                        "all" + tag + Suffix(d));
      }
      t_rows[target].push_back({s, -1.0});
    }
  }
  for (NodeId node = 0; node < n; ++node) {
    p.AddConstraint(std::move(t_rows[node]), Comparator::kLessEq, 0.0,
                    "some" + Suffix(node));
  }

  // Attribute perturbations require a controlled node.
  for (NodeId node = 0; node < n; ++node) {
    p.AddConstraint({{layout.b_add[node], 1.0},
                     {layout.attacker[node], -1.0 * cap_add[node]}},
                    Comparator::kLessEq, 0.0, "locxadd" + Suffix(node));
    p.AddConstraint({{layout.b_del[node], 1.0},
                     {layout.attacker[node], -1.0 * cap_del[node]}},
                    Comparator::kLessEq, 0.0, "locxdel" + Suffix(node));
  }

  // Adjacency: per-node local rows plus attacker coverage.
  for (const EdgeGroup& group : groups) {
    const PerturbationType type = group.addition ? PerturbationType::kEdgeAdd
                                                 : PerturbationType::kEdgeDelete;
    const std::string tag = group.addition ? "add" : "del";
    std::vector<std::vector<Term>> incident(n);
    std::vector<std::vector<Term>> charged(n);
    for (const ProblemLayout::EdgeVar& e : layout.edges) {
      if (e.addition != group.addition) continue;
      incident[e.from].push_back({e.column, 1.0});
      incident[e.to].push_back({e.column, 1.0});
      charged[e.from].push_back({e.column, 1.0});
    }
    for (NodeId node = 0; node < n; ++node) {
      const int cap = CapOr(tm.LocalCap(type, node),
                            IncidentPositions(graph, node, group.addition));
      if (merged) {
        std::vector<Term> row = charged[node];
        row.push_back({layout.attacker[node], -1.0 * cap});
        p.AddConstraint(std::move(row), Comparator::kLessEq, 0.0,
                        "ctl" + tag + Suffix(node));
        if (tm.Local(type)) {
          p.AddConstraint(incident[node], Comparator::kLessEq, cap,
                          "loca" + tag + Suffix(node));
        }
      } else {
        p.AddConstraint(incident[node], Comparator::kLessEq, cap,
                        "loca" + tag + Suffix(node));
      }
    }
  }
  if (merged) {
    for (std::size_t k = 0; k + 1 < layout.edges.size(); k += 2) {
      const auto& e = layout.edges[k];
      p.AddConstraint({{e.column, 1.0}, {layout.edges[k + 1].column, 1.0}},
                      Comparator::kLessEq, 1.0,
                      std::string(e.addition ? "onceadd" : "oncedel") +
                          Suffix(e.from, e.to));
    }
  } else {
    for (const ProblemLayout::EdgeVar& e : layout.edges) {
      p.AddConstraint({{e.column, 1.0},
                       {layout.attacker[e.from], -1.0},
                       {layout.attacker[e.to], -1.0}},
                      Comparator::kLessEq, 0.0,
                      std::string(e.addition ? "covadd" : "covdel") +
                          Suffix(e.from, e.to));
    }
  }

  // Global budgets and the attacker limit.
  std::vector<Term> sum_add;
  std::vector<Term> sum_del;
  std::vector<Term> sum_attackers;
  for (NodeId node = 0; node < n; ++node) {
    sum_add.push_back({layout.b_add[node], 1.0});
    sum_del.push_back({layout.b_del[node], 1.0});
    sum_attackers.push_back({layout.attacker[node], 1.0});
  }
  std::vector<Term> sum_edge_add;
  std::vector<Term> sum_edge_del;
  for (const ProblemLayout::EdgeVar& e : layout.edges) {
    (e.addition ? sum_edge_add : sum_edge_del).push_back({e.column, 1.0});
  }
  p.AddConstraint(std::move(sum_add), Comparator::kLessEq, tm.global.x_add,
                  "global_x_add");
  p.AddConstraint(std::move(sum_del), Comparator::kLessEq, tm.global.x_del,
                  "global_x_del");
  p.AddConstraint(std::move(sum_edge_add), Comparator::kLessEq,
                  tm.global.a_add, "global_a_add");
  p.AddConstraint(std::move(sum_edge_del), Comparator::kLessEq,
                  tm.global.a_del, "global_a_del");
  p.AddConstraint(std::move(sum_attackers), Comparator::kLessEq,
                  tm.sigma.value_or(n), "attackers");

  SetTargetObjective(inst, built);
  return built;
}

CertWitness ExtractWitness(const CertInstance& inst,
                           const ProblemLayout& layout,
                           const std::vector<double>& values) {
  CertWitness w;
  if (values.empty()) return w;
  const int n = inst.graph.num_nodes();
  w.b_add.assign(n, 0.0);
  w.b_del.assign(n, 0.0);
  for (NodeId node = 0; node < n; ++node) {
    if (layout.b_add[node] >= 0) w.b_add[node] = values[layout.b_add[node]];
    if (layout.b_del[node] >= 0) w.b_del[node] = values[layout.b_del[node]];
    if (layout.attacker[node] >= 0 && values[layout.attacker[node]] > 0.5) {
      w.attackers.push_back(node);
    }
  }
  for (const ProblemLayout::EdgeVar& e : layout.edges) {
    if (values[e.column] > 1e-9) {
      w.edge_flips.push_back({e.from, e.to, e.addition, values[e.column]});
    }
  }
  for (NodeId target : inst.targets) {
    if (values[layout.t[target]] > 0.5) w.attacked_targets.push_back(target);
  }
  return w;
}

}  // namespace

bool CertInstance::UsesUndirectedVars() const {
  return options.undirected_vars.value_or(!graph.directed());
}

void CertInstance::Validate() const {
  const int n = graph.num_nodes();
  tm.Validate(n, graph.directed());
  if (layers < 1) throw InputError("layer count must be at least 1");
  if (options.undirected_vars.value_or(false) && graph.directed()) {
    throw InputError("undirected_vars requires an undirected graph");
  }
  if (certs.size() != targets.size() || fields.size() != targets.size()) {
    throw InputError("certificates and receptive fields must align with "
                     "targets");
  }
  std::set<NodeId> seen;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const NodeId t = targets[i];
    if (t < 0 || t >= n) {
      throw InputError("target " + std::to_string(t) + " out of range");
    }
    if (!seen.insert(t).second) {
      throw InputError("duplicate target " + std::to_string(t));
    }
    if (certs[i].node != t || fields[i].owner() != t) {
      throw InputError("certificate or field does not belong to target " +
                       std::to_string(t));
    }
    if (!ComponentwiseLessEq(tm.global, certs[i].budget_box)) {
      throw InputError("front of node " + std::to_string(t) +
                       " does not cover the global budget box " +
                       ToString(tm.global));
    }
  }
}

CertInstance MakeInstance(
    Graph graph, ThreatModel tm, std::vector<NodeId> targets,
    const std::function<BaseCertificate(NodeId)>& cert_for, int layers,
    CertOptions options) {
  CertInstance inst;
  inst.graph = std::move(graph);
  inst.tm = std::move(tm);
  inst.targets = std::move(targets);
  inst.layers = layers;
  inst.options = std::move(options);
  inst.tm.Validate(inst.graph.num_nodes(), inst.graph.directed());
  for (NodeId t : inst.targets) {
    if (t < 0 || t >= inst.graph.num_nodes()) {
      throw InputError("target " + std::to_string(t) + " out of range");
    }
    inst.certs.push_back(cert_for(t));
    inst.fields.push_back(
        ComputeReceptiveField(inst.graph, t, layers, inst.tm));
  }
  inst.Validate();
  return inst;
}

std::vector<BudgetVector> ReachableFront(const BaseCertificate& cert,
                                         const BudgetVector& global) {
  std::vector<BudgetVector> reachable;
  for (const BudgetVector& point : cert.front) {
    if (ComponentwiseLessEq(point, global)) reachable.push_back(point);
  }
  return reachable;
}

int NaiveCertificate(const CertInstance& inst) {
  int count = 0;
  for (const BaseCertificate& cert : inst.certs) {
    if (ReachableFront(cert, inst.tm.global).empty()) ++count;
  }
  return count;
}

bool UsesFastPath(const CertInstance& inst) {
  return inst.options.allow_fast_path && inst.tm.global.NumNonZero() == 1 &&
         !inst.tm.HasLocalBudgets() && !inst.tm.sigma.has_value();
}

BuiltProblem BuildProblem(const CertInstance& inst) {
  inst.Validate();
  return UsesFastPath(inst) ? BuildFastPath(inst) : BuildGeneral(inst);
}

ProblemSize MeasureProblem(const lp::LinearProblem& problem) {
  ProblemSize size;
  size.variables = problem.num_variables();
  size.rows = problem.num_constraints();
  size.constraints = size.rows + size.variables;
  return size;
}

ProblemSize ExpectedProblemSize(const CertInstance& inst) {
  const std::int64_t n = inst.graph.num_nodes();
  const std::int64_t e = inst.graph.num_edges();
  const std::int64_t addable =
      inst.tm.global.a_add > 0
          ? (inst.graph.directed() ? n * (n - 1) : n * (n - 1) / 2) - e
          : 0;
  std::int64_t front_points = 0;
  for (const BaseCertificate& cert : inst.certs) {
    front_points += static_cast<std::int64_t>(
        ReachableFront(cert, inst.tm.global).size());
  }
  ProblemSize size;
  if (UsesFastPath(inst)) {
    std::int64_t axis_vars = n;
    if (inst.tm.global.a_del > 0) axis_vars = e;
    if (inst.tm.global.a_add > 0) axis_vars = addable;
    size.variables = n + axis_vars;
    size.rows = n + 1;
  } else if (inst.UsesUndirectedVars()) {
    const bool additions = inst.tm.global.a_add > 0;
    size.variables = 5 * front_points + 4 * n + 2 * e + 2 * addable;
    size.rows = 8 * front_points + 4 * n + e + addable + 5;
    if (additions) size.rows += n;
    if (inst.tm.local_a_del) size.rows += n;
    if (additions && inst.tm.local_a_add) size.rows += n;
  } else {
    const bool additions = inst.tm.global.a_add > 0;
    size.variables = 5 * front_points + 4 * n + e + addable;
    size.rows = 8 * front_points + 4 * n + e + 5 + addable;
    if (additions) size.rows += n;
  }
  size.constraints = size.rows + size.variables;
  return size;
}

CertResult Certify(const CertInstance& inst) {
  BuiltProblem built = BuildProblem(inst);
  lp::Solution solution;
  if (inst.options.relaxed) {
    solution = lp::SolveLp(built.problem.Relaxed(), inst.options.solver);
  } else {
    solution = lp::SolveMilp(built.problem, inst.options.solver);
  }
  CertResult result;
  result.status = solution.status;
  result.iterations = solution.iterations;
  result.nodes = solution.nodes;
  result.objective = solution.objective;
  std::optional<double> bound;
  if (solution.status == lp::SolveStatus::kOptimal) {
    bound = solution.objective;
  } else if (solution.status == lp::SolveStatus::kIterationLimit &&
             !inst.options.relaxed && std::isfinite(solution.dual_bound)) {
    bound = solution.dual_bound;
  }
  if (bound) {
    const double count = std::ceil(*bound - kCountGuard);
    result.certified_count = static_cast<int>(std::clamp(
        count, 0.0, static_cast<double>(inst.targets.size())));
  }
  if (solution.status == lp::SolveStatus::kOptimal ||
      solution.status == lp::SolveStatus::kIterationLimit) {
    result.witness = ExtractWitness(inst, built.layout, solution.values);
  }
  return result;
}

std::vector<SweepRow> Sweep(const CertInstance& base, PerturbationType axis,
                            const std::vector<int>& radii, int num_threads) {
  for (int r : radii) {
    if (r < 0) throw InputError("sweep radii must be non-negative");
  }
  const int count = static_cast<int>(radii.size());
  std::vector<SweepRow> rows(count);
  std::vector<std::exception_ptr> errors(count);
  auto solve = [&](int index) {
    const auto start = std::chrono::steady_clock::now();
    CertInstance inst = base;
    inst.tm.global[axis] = radii[index];
    if (inst.tm.AllowsEdgeAddition() != base.tm.AllowsEdgeAddition()) {
      for (std::size_t i = 0; i < inst.targets.size(); ++i) {
        inst.fields[i] = ComputeReceptiveField(inst.graph, inst.targets[i],
                                               inst.layers, inst.tm);
      }
    }
    const CertResult result = Certify(inst);
    SweepRow& row = rows[index];
    row.radius = radii[index];
    row.collective = result.certified_count;
    row.naive = NaiveCertificate(inst);
    row.objective = result.objective;
    row.status = result.status;
    row.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  };
  int threads = num_threads > 0
                    ? num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(count, 1));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        solve(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return rows;
}

std::string CertResultToJson(const CertResult& result) {
  using Ordered = nlohmann::ordered_json;
  Ordered doc;
  doc["certified_count"] = result.certified_count;
  if (std::isfinite(result.objective)) {
    doc["objective"] = result.objective;
  } else {
    doc["objective"] = nullptr;
  }
  doc["status"] = std::string(lp::ToString(result.status));
  Ordered witness;
  auto nonzero = [](const std::vector<double>& values) {
    Ordered list = Ordered::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] > 1e-9) list.push_back({static_cast<int>(i), values[i]});
    }
    return list;
  };
  witness["b_x_add"] = nonzero(result.witness.b_add);
  witness["b_x_del"] = nonzero(result.witness.b_del);
  Ordered flips = Ordered::array();
  for (const CertWitness::EdgeFlip& f : result.witness.edge_flips) {
    flips.push_back({{"from", f.from},
                     {"to", f.to},
                     {"type", f.addition ? "a_add" : "a_del"},
                     {"amount", f.amount}});
  }
  witness["edge_flips"] = std::move(flips);
  witness["attackers"] = result.witness.attackers;
  witness["attacked_targets"] = result.witness.attacked_targets;
  doc["witness"] = std::move(witness);
  return doc.dump(2) + "\n";
}

}  // namespace collcert
