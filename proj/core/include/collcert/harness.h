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

#ifndef COLLCERT_HARNESS_H_
#define COLLCERT_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "collcert/budget.h"
#include "collcert/graph.h"

namespace collcert {

// A run configuration: one JSON document. Relative paths are resolved
// against the directory holding the config file.
struct RunConfig {
  std::filesystem::path graph;
  std::optional<std::filesystem::path> threat_model;
  // Exactly one of `fronts` and `smoothing` is set.
  std::optional<std::filesystem::path> fronts;
  std::optional<std::filesystem::path> smoothing;
  std::optional<std::filesystem::path> predictions;
  std::filesystem::path output_dir;

  // "exact" or "relaxed".
  std::string mode = "relaxed";
  int layers = 1;
  int num_classes = 2;
  std::optional<std::vector<NodeId>> targets;

  std::optional<PerturbationType> sweep_axis;
  // Non-negative and strictly increasing.
  std::vector<int> sweep_radii;
  // Box for front computation; defaults to the threat model's global budget
  // stretched along the sweep axis to the largest radius.
  std::optional<BudgetVector> budget_box;

  std::uint64_t seed = 0;
  std::int64_t class_samples = 1000;
  std::int64_t probability_samples = 1000000;
  double alpha = 0.01;
  int num_threads = 0;

  bool record_timings = true;
  bool log_x = false;
  std::optional<bool> undirected_vars;
  bool fast_path = true;
  std::int64_t max_nodes = 100000;

  // Throws InputError on violated invariants.
  void Validate() const;
};

RunConfig ParseRunConfig(const std::string& text,
                         const std::filesystem::path& base_dir,
                         const std::string& origin);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Parses "x_add=1,x_del=0,a_add=0,a_del=2". Omitted types are zero.
BudgetVector ParseBudgetAssignment(const std::string& text);

// Command-line values that take precedence over the config file.
struct RunOverrides {
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  // Budget assignment for the export command, parsed by
  // ParseBudgetAssignment.
  std::optional<std::string> radius;
};

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternalError = 1;
inline constexpr int kExitInputError = 2;

// Each command writes progress to `out`. On failure it writes one line of
// JSON {"error": ..., "stage": ..., "exit_code": ...} to `err` and returns
// the exit code: 2 for input errors, 1 for anything else.
//
// certify: report.csv, report.json and curve.svg in output_dir.
int RunCertify(const std::filesystem::path& config_path,
               const RunOverrides& overrides, std::ostream& out,
               std::ostream& err);
// pareto: fronts.json (plus predictions.json when they were estimated).
int RunPareto(const std::filesystem::path& config_path,
              const RunOverrides& overrides, std::ostream& out,
              std::ostream& err);
// export: problem.lp for the budget in overrides.radius.
int RunExport(const std::filesystem::path& config_path,
              const RunOverrides& overrides, std::ostream& out,
              std::ostream& err);

}  // namespace collcert

#endif  // COLLCERT_HARNESS_H_
