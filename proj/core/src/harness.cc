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

#include "collcert/harness.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "collcert/collective.h"
#include "collcert/errors.h"
#include "collcert/lp/lp_format.h"
#include "collcert/pareto.h"
#include "collcert/report.h"
#include "collcert/smoothing.h"
#include "internal/json_util.h"

namespace collcert {
namespace {

namespace fs = std::filesystem;
using internal::GetField;
using internal::Json;

struct StageFailure {
  std::string stage;
  int exit_code = kExitInternalError;
  std::string message;
};

template <typename F>
auto InStage(const char* stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageFailure&) {
    throw;
  } catch (const InputError& e) {
    throw StageFailure{stage, kExitInputError, e.what()};
  } catch (const std::exception& e) {
    throw StageFailure{stage, kExitInternalError, e.what()};
  }
}

fs::path ResolvePath(const fs::path& base_dir, const std::string& value) {
  const fs::path path(value);
  return path.is_absolute() ? path : (base_dir / path).lexically_normal();
}

std::optional<fs::path> OptionalPath(const Json& doc, const char* key,
                                     const fs::path& base_dir,
                                     const std::string& origin) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return ResolvePath(base_dir, GetField<std::string>(doc, key, origin));
}

BudgetVector ParseBudgetArray(const Json& value, const std::string& where) {
  std::vector<int> parts;
  try {
    parts = value.get<std::vector<int>>();
  } catch (const Json::exception&) {
    throw InputError(where + ": expected an array of four integers");
  }
  if (parts.size() != 4) {
    throw InputError(where + ": expected an array of four integers");
  }
  BudgetVector budget{parts[0], parts[1], parts[2], parts[3]};
  if (!budget.IsNonNegative()) {
    throw InputError(where + ": negative component");
  }
  return budget;
}

// Everything loaded before certification.
struct Pipeline {
  RunConfig config;
  std::uint64_t config_hash = 0;
  Graph graph;
  ThreatModel tm;
  std::optional<SmoothingParams> smoothing;
  std::optional<std::vector<SmoothedPrediction>> predictions;
  bool predictions_estimated = false;
  std::vector<NodeId> targets;
};

void LoadConfigStage(const fs::path& config_path,
                     const RunOverrides& overrides, Pipeline& pipe) {
  InStage("load_config", [&] {
    const std::string text = internal::ReadTextFile(config_path);
    pipe.config = ParseRunConfig(text, config_path.parent_path(),
                                 config_path.string());
    if (overrides.mode) pipe.config.mode = *overrides.mode;
    if (overrides.seed) pipe.config.seed = *overrides.seed;
    pipe.config.Validate();
    std::ostringstream key;
    key << text << "\nmode=" << pipe.config.mode
        << "\nseed=" << pipe.config.seed;
    if (overrides.radius) key << "\nradius=" << *overrides.radius;
    pipe.config_hash = Fnv1a64(key.str());
  });
}

void LoadInputsStages(Pipeline& pipe) {
  const RunConfig& config = pipe.config;
  InStage("load_graph", [&] { pipe.graph = LoadGraph(config.graph); });
  InStage("load_threat_model", [&] {
    if (config.threat_model) pipe.tm = LoadThreatModel(*config.threat_model);
    pipe.tm.Validate(pipe.graph.num_nodes(), pipe.graph.directed());
  });
  InStage("predictions", [&] {
    const int n = pipe.graph.num_nodes();
    if (config.smoothing) {
      pipe.smoothing = LoadSmoothingParams(*config.smoothing);
    }
    if (config.predictions) {
      pipe.predictions = LoadPredictions(*config.predictions);
      for (const SmoothedPrediction& p : *pipe.predictions) {
        if (p.node >= n) {
          throw InputError("prediction for node " + std::to_string(p.node) +
                           " but the graph has " + std::to_string(n) +
                           " nodes");
        }
      }
    } else if (pipe.smoothing) {
      EstimationOptions options;
      options.layers = config.layers;
      options.num_classes = config.num_classes;
      options.class_samples = config.class_samples;
      options.probability_samples = config.probability_samples;
      options.alpha = config.alpha;
      options.seed = config.seed;
      options.num_threads = config.num_threads;
      pipe.predictions = EstimatePredictions(pipe.graph, *pipe.smoothing,
                                             options);
      pipe.predictions_estimated = true;
    }

    if (config.targets) {
      pipe.targets = *config.targets;
      for (NodeId t : pipe.targets) {
        if (t < 0 || t >= n) {
          throw InputError("target " + std::to_string(t) + " out of range");
        }
      }
    } else if (pipe.predictions) {
      const auto& labels = pipe.graph.labels();
      for (const SmoothedPrediction& p : *pipe.predictions) {
        if (!labels || (*labels)[p.node] == p.majority_class) {
          pipe.targets.push_back(p.node);
        }
      }
    } else {
      for (NodeId v = 0; v < n; ++v) pipe.targets.push_back(v);
    }
  });
}

const SmoothedPrediction* FindPrediction(
    const std::vector<SmoothedPrediction>& preds, NodeId node) {
  auto it = std::lower_bound(
      preds.begin(), preds.end(), node,
      [](const SmoothedPrediction& p, NodeId v) { return p.node < v; });
  return it != preds.end() && it->node == node ? &*it : nullptr;
}

// Fronts of every target over `box`, computed in parallel from the smoothing
// parameters and predictions.
FrontCollection ComputeFronts(const Pipeline& pipe, const BudgetVector& box) {
  if (!pipe.smoothing) {
    throw InputError("computing fronts requires smoothing parameters");
  }
  if (!pipe.predictions) throw InputError("no predictions available");
  const SmoothingParams& params = *pipe.smoothing;
  params.ValidateFor(box);
  std::vector<double> p_lower;
  for (NodeId t : pipe.targets) {
    const SmoothedPrediction* p = FindPrediction(*pipe.predictions, t);
    if (p == nullptr) {
      throw InputError("no prediction for target " + std::to_string(t));
    }
    p_lower.push_back(p->p_lower);
  }

  const int count = static_cast<int>(pipe.targets.size());
  std::vector<BaseCertificate> certs(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        const double p = p_lower[i];
        certs[i] = ComputeFront(
            [&](const BudgetVector& b) { return IsCertified(b, p, params); },
            box, pipe.targets[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int threads = pipe.config.num_threads > 0
                    ? pipe.config.num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  FrontCollection fronts;
  fronts.budget_box = box;
  for (BaseCertificate& cert : certs) {
    fronts.fronts.emplace(cert.node, std::move(cert.front));
  }
  return fronts;
}

BudgetVector SweepBox(const Pipeline& pipe) {
  if (pipe.config.budget_box) return *pipe.config.budget_box;
  if (!pipe.config.sweep_axis) {
    throw InputError("either budget_box or sweep is required");
  }
  BudgetVector box = pipe.tm.global;
  box[*pipe.config.sweep_axis] = pipe.config.sweep_radii.back();
  return box;
}

FrontCollection FrontsStage(const Pipeline& pipe, const BudgetVector& needed) {
  return InStage("fronts", [&] {
    FrontCollection fronts;
    if (pipe.config.fronts) {
      fronts = LoadFronts(*pipe.config.fronts);
    } else {
      BudgetVector box = needed;
      if (pipe.config.budget_box) box = *pipe.config.budget_box;
      fronts = ComputeFronts(pipe, box);
    }
    if (!ComponentwiseLessEq(needed, fronts.budget_box)) {
      throw InputError("budget box " + ToString(fronts.budget_box) +
                       " does not cover " + ToString(needed));
    }
    return fronts;
  });
}

CertInstance BuildInstance(const Pipeline& pipe, const FrontCollection& fronts,
                           const ThreatModel& tm) {
  CertOptions options;
  options.relaxed = pipe.config.mode == "relaxed";
  options.undirected_vars = pipe.config.undirected_vars;
  options.allow_fast_path = pipe.config.fast_path;
  options.solver.max_nodes = pipe.config.max_nodes;
  return MakeInstance(
      pipe.graph, tm, pipe.targets,
      [&](NodeId node) { return fronts.CertificateFor(node); },
      pipe.config.layers, options);
}

void ReportFailure(const StageFailure& failure, std::ostream& err) {
  nlohmann::ordered_json doc;
  doc["error"] = failure.message;
  doc["stage"] = failure.stage;
  doc["exit_code"] = failure.exit_code;
  err << doc.dump() << std::endl;
}

template <typename F>
int RunCommand(F&& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const StageFailure& failure) {
    ReportFailure(failure, err);
    return failure.exit_code;
  } catch (const std::exception& e) {
    ReportFailure({"internal", kExitInternalError, e.what()}, err);
    return kExitInternalError;
  }
}

void WriteOutput(const fs::path& dir, const char* name,
                 const std::string& text) {
  fs::create_directories(dir);
  internal::WriteTextFile(dir / name, text);
}

}  // namespace

void RunConfig::Validate() const {
  if (fronts.has_value() == smoothing.has_value()) {
    throw InputError("exactly one of \"fronts\" and \"smoothing\" is required");
  }
  if (mode != "exact" && mode != "relaxed") {
    throw InputError("mode must be \"exact\" or \"relaxed\"");
  }
  if (layers < 1) throw InputError("layers must be at least 1");
  if (num_classes < 1) throw InputError("num_classes must be at least 1");
  if (sweep_axis.has_value() && sweep_radii.empty()) {
    throw InputError("sweep radii must not be empty");
  }
  for (std::size_t i = 0; i < sweep_radii.size(); ++i) {
    if (sweep_radii[i] < 0) throw InputError("sweep radii must be >= 0");
    if (i > 0 && sweep_radii[i] <= sweep_radii[i - 1]) {
      throw InputError("sweep radii must be strictly increasing");
    }
  }
  if (class_samples < 1 || probability_samples < 1) {
    throw InputError("sample counts must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("alpha must lie in (0, 1)");
  }
  if (num_threads < 0) throw InputError("num_threads must be >= 0");
  if (max_nodes < 1) throw InputError("max_nodes must be positive");
}

RunConfig ParseRunConfig(const std::string& text, const fs::path& base_dir,
                         const std::string& origin) {
  static const std::set<std::string> kKnownKeys = {
      "graph",          "threat_model",  "fronts",
      "smoothing",      "predictions",   "output_dir",
      "mode",           "layers",        "num_classes",
      "targets",        "sweep",         "budget_box",
      "seed",           "class_samples", "probability_samples",
      "alpha",          "num_threads",   "record_timings",
      "log_x",          "undirected_vars", "fast_path",
      "max_nodes"};
  const Json doc = internal::ParseJsonText(text, origin);
  if (!doc.is_object()) throw InputError(origin + ": expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) {
      throw InputError(origin + ": unknown field \"" + key + "\"");
    }
  }

  RunConfig config;
  config.graph = ResolvePath(base_dir, GetField<std::string>(doc, "graph", origin));
  config.threat_model = OptionalPath(doc, "threat_model", base_dir, origin);
  config.fronts = OptionalPath(doc, "fronts", base_dir, origin);
  config.smoothing = OptionalPath(doc, "smoothing", base_dir, origin);
  config.predictions = OptionalPath(doc, "predictions", base_dir, origin);
  config.output_dir = ResolvePath(
      base_dir, internal::GetFieldOr<std::string>(doc, "output_dir", "out",
                                                  origin));
  config.mode = internal::GetFieldOr<std::string>(doc, "mode", config.mode,
                                                  origin);
  config.layers = internal::GetFieldOr(doc, "layers", config.layers, origin);
  config.num_classes =
      internal::GetFieldOr(doc, "num_classes", config.num_classes, origin);
  if (doc.contains("targets") && !doc["targets"].is_null()) {
    config.targets = GetField<std::vector<NodeId>>(doc, "targets", origin);
  }
  if (doc.contains("sweep") && !doc["sweep"].is_null()) {
    const Json& sweep = doc["sweep"];
    const std::string where = origin + ": sweep";
    const std::string axis = GetField<std::string>(sweep, "axis", where);
    config.sweep_axis = ParsePerturbationType(axis);
    if (!config.sweep_axis) {
      throw InputError(where + ": unknown axis \"" + axis + "\"");
    }
    config.sweep_radii = GetField<std::vector<int>>(sweep, "radii", where);
  }
  if (doc.contains("budget_box") && !doc["budget_box"].is_null()) {
    config.budget_box =
        ParseBudgetArray(doc["budget_box"], origin + ": budget_box");
  }
  config.seed = internal::GetFieldOr(doc, "seed", config.seed, origin);
  config.class_samples =
      internal::GetFieldOr(doc, "class_samples", config.class_samples, origin);
  config.probability_samples = internal::GetFieldOr(
      doc, "probability_samples", config.probability_samples, origin);
  config.alpha = internal::GetFieldOr(doc, "alpha", config.alpha, origin);
  config.num_threads =
      internal::GetFieldOr(doc, "num_threads", config.num_threads, origin);
  config.record_timings = internal::GetFieldOr(
      doc, "record_timings", config.record_timings, origin);
  config.log_x = internal::GetFieldOr(doc, "log_x", config.log_x, origin);
  if (doc.contains("undirected_vars") && !doc["undirected_vars"].is_null()) {
    config.undirected_vars = GetField<bool>(doc, "undirected_vars", origin);
  }
  config.fast_path =
      internal::GetFieldOr(doc, "fast_path", config.fast_path, origin);
  config.max_nodes =
      internal::GetFieldOr(doc, "max_nodes", config.max_nodes, origin);
  try {
    config.Validate();
  } catch (const InputError& e) {
    throw InputError(origin + ": " + e.what());
  }
  return config;
}

RunConfig LoadRunConfig(const fs::path& path) {
  return ParseRunConfig(internal::ReadTextFile(path), path.parent_path(),
                        path.string());
}

BudgetVector ParseBudgetAssignment(const std::string& text) {
  BudgetVector budget;
  std::set<PerturbationType> seen;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw InputError("budget \"" + text + "\": expected name=value pairs");
    }
    const auto type = ParsePerturbationType(item.substr(0, eq));
    if (!type) {
      throw InputError("budget \"" + text + "\": unknown type \"" +
                       item.substr(0, eq) + "\"");
    }
    if (!seen.insert(*type).second) {
      throw InputError("budget \"" + text + "\": repeated type");
    }
    const std::string value = item.substr(eq + 1);
    int amount = 0;
    try {
      std::size_t used = 0;
      amount = std::stoi(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw InputError("budget \"" + text + "\": bad value \"" + value + "\"");
    }
    if (amount < 0) throw InputError("budget \"" + text + "\": negative value");
    budget[*type] = amount;
  }
  return budget;
}

int RunCertify(const fs::path& config_path, const RunOverrides& overrides,
               std::ostream& out, std::ostream& err) {
  return RunCommand(
      [&] {
        Pipeline pipe;
        LoadConfigStage(config_path, overrides, pipe);
        InStage("load_config", [&] {
          if (!pipe.config.sweep_axis) {
            throw InputError("certify requires a sweep");
          }
        });
        LoadInputsStages(pipe);
        const PerturbationType axis = *pipe.config.sweep_axis;
        BudgetVector needed = pipe.tm.global;
        needed[axis] = pipe.config.sweep_radii.back();
        const FrontCollection fronts = FrontsStage(pipe, needed);

        const std::vector<SweepRow> rows = InStage("certify", [&] {
          const CertInstance inst = BuildInstance(pipe, fronts, pipe.tm);
          return Sweep(inst, axis, pipe.config.sweep_radii,
                       pipe.config.num_threads);
        });

        InStage("write_report", [&] {
          CertificationReport report =
              MakeReport(rows, axis, static_cast<int>(pipe.targets.size()));
          report.mode = pipe.config.mode;
          report.config_hash = pipe.config_hash;
          report.seed = pipe.config.seed;
          const bool timings = pipe.config.record_timings;
          WriteOutput(pipe.config.output_dir, "report.csv",
                      ReportToCsv(report, timings));
          WriteOutput(pipe.config.output_dir, "report.json",
                      ReportToJson(report, timings));
          WriteOutput(pipe.config.output_dir, "curve.svg",
                      ReportToSvg(report, pipe.config.log_x));
          out << "targets: " << report.num_targets << "\n";
          for (const ReportRow& row : report.rows) {
            out << ToString(axis) << "=" << row.radius
                << "  collective=" << row.collective_count
                << "  naive=" << row.naive_count << "  (" << row.status
                << ")\n";
          }
          if (report.collective_radius) {
            out << "average certifiable radius: collective "
                << *report.collective_radius << ", naive "
                << *report.naive_radius << "\n";
          }
          out << "wrote " << (pipe.config.output_dir / "report.csv").string()
              << "\n";
        });
      },
      err);
}

int RunPareto(const fs::path& config_path, const RunOverrides& overrides,
              std::ostream& out, std::ostream& err) {
  return RunCommand(
      [&] {
        Pipeline pipe;
        LoadConfigStage(config_path, overrides, pipe);
        InStage("load_config", [&] {
          if (!pipe.config.smoothing) {
            throw InputError("pareto requires smoothing parameters");
          }
        });
        LoadInputsStages(pipe);
        const FrontCollection fronts = InStage("fronts", [&] {
          return ComputeFronts(pipe, SweepBox(pipe));
        });
        InStage("write_report", [&] {
          WriteOutput(pipe.config.output_dir, "fronts.json",
                      FrontsToJson(fronts));
          if (pipe.predictions_estimated) {
            WriteOutput(pipe.config.output_dir, "predictions.json",
                        PredictionsToJson(*pipe.predictions));
          }
          std::size_t points = 0;
          for (const auto& [node, front] : fronts.fronts) {
            points += front.size();
          }
          out << "fronts: " << fronts.fronts.size() << " nodes, " << points
              << " points in box " << ToString(fronts.budget_box) << "\n";
          out << "wrote " << (pipe.config.output_dir / "fronts.json").string()
              << "\n";
        });
      },
      err);
}

int RunExport(const fs::path& config_path, const RunOverrides& overrides,
              std::ostream& out, std::ostream& err) {
  return RunCommand(
      [&] {
        Pipeline pipe;
        LoadConfigStage(config_path, overrides, pipe);
        const BudgetVector radius = InStage("load_config", [&] {
          if (!overrides.radius) {
            throw InputError("export requires --radius");
          }
          return ParseBudgetAssignment(*overrides.radius);
        });
        LoadInputsStages(pipe);
        ThreatModel tm = pipe.tm;
        tm.global = radius;
        const FrontCollection fronts = FrontsStage(pipe, tm.global);

        const BuiltProblem built = InStage("certify", [&] {
          tm.Validate(pipe.graph.num_nodes(), pipe.graph.directed());
          return BuildProblem(BuildInstance(pipe, fronts, tm));
        });
        InStage("write_report", [&] {
          const CertInstance inst = BuildInstance(pipe, fronts, tm);
          const ProblemSize expected = ExpectedProblemSize(inst);
          const ProblemSize actual = MeasureProblem(built.problem);
          fs::create_directories(pipe.config.output_dir);
          const fs::path lp_path = pipe.config.output_dir / "problem.lp";
          lp::ExportLp(built.problem, lp_path);
          out << "form: " << (built.layout.fast_path ? "single-axis" : "general")
              << "\n";
          out << "expected: " << expected.constraints << " constraints, "
              << expected.variables << " variables\n";
          out << "actual:   " << actual.constraints << " constraints, "
              << actual.variables << " variables\n";
          out << "wrote " << lp_path.string() << "\n";
          if (!(expected == actual)) {
            throw Error("problem size differs from the closed form");
          }
        });
      },
      err);
}

}  // namespace collcert
