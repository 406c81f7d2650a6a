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

#include "collcert/smoothing.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "collcert/errors.h"
#include "collcert/sampling.h"
#include "collcert/stats.h"
#include "internal/json_util.h"

namespace collcert {

using internal::GetField;
using internal::Json;

namespace {

constexpr int kLogSpaceThreshold = 50;
constexpr double kCertificationMargin = 1e-12;

struct AgreementMarginal {
  std::vector<double> clean;
  std::vector<double> perturbed;
};

double LogAddExp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Distribution of the number of agreeing bits when `count_a` bits agree
// independently with probability `prob_a` and `count_b` bits with `prob_b`.
std::vector<double> AgreementCounts(int count_a, double prob_a, int count_b,
                                    double prob_b) {
  const int total = count_a + count_b;
  if (total <= kLogSpaceThreshold) {
    std::vector<double> dist(total + 1, 0.0);
    dist[0] = 1.0;
    int filled = 0;
    auto add_bit = [&](double agree) {
      for (int q = filled + 1; q >= 1; --q) {
        dist[q] = dist[q] * (1.0 - agree) + dist[q - 1] * agree;
      }
      dist[0] *= 1.0 - agree;
      ++filled;
    };
    for (int i = 0; i < count_a; ++i) add_bit(prob_a);
    for (int i = 0; i < count_b; ++i) add_bit(prob_b);
    return dist;
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_dist(total + 1, kNegInf);
  log_dist[0] = 0.0;
  int filled = 0;
  auto add_bit = [&](double agree) {
    const double log_agree = agree > 0.0 ? std::log(agree) : kNegInf;
    const double log_miss = agree < 1.0 ? std::log1p(-agree) : kNegInf;
    for (int q = filled + 1; q >= 1; --q) {
      log_dist[q] =
          LogAddExp(log_dist[q] + log_miss, log_dist[q - 1] + log_agree);
    }
    log_dist[0] += log_miss;
    ++filled;
  };
  for (int i = 0; i < count_a; ++i) add_bit(prob_a);
  for (int i = 0; i < count_b; ++i) add_bit(prob_b);
  std::vector<double> dist(total + 1);
  for (int q = 0; q <= total; ++q) dist[q] = std::exp(log_dist[q]);
  return dist;
}

// Added bits are 0 in the clean graph and 1 in the perturbed one; a sample
// agrees with the clean graph on such a bit when it shows 0.
AgreementMarginal Marginal(int num_add, int num_del, double theta_add,
                           double theta_del) {
  return {AgreementCounts(num_add, 1.0 - theta_add, num_del, 1.0 - theta_del),
          AgreementCounts(num_add, theta_del, num_del, theta_add)};
}

void CheckProbability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InputError(std::string("smoothing parameter ") + name +
                     " must lie in [0, 1]");
  }
}

}  // namespace

void SmoothingParams::Validate() const {
  CheckProbability(theta_x_add, "theta_x_add");
  CheckProbability(theta_x_del, "theta_x_del");
  CheckProbability(theta_a_add, "theta_a_add");
  CheckProbability(theta_a_del, "theta_a_del");
}

void SmoothingParams::ValidateFor(const BudgetVector& budget) const {
  Validate();
  if (budget.x_add + budget.x_del > 0 && theta_x_add + theta_x_del == 1.0) {
    throw InputError(
        "degenerate attribute smoothing: theta_x_add + theta_x_del = 1");
  }
  if (budget.a_add + budget.a_del > 0 && theta_a_add + theta_a_del == 1.0) {
    throw InputError(
        "degenerate adjacency smoothing: theta_a_add + theta_a_del = 1");
  }
}

SmoothingParams ParseSmoothingParamsJson(const std::string& text,
                                         const std::string& origin) {
  const Json doc = internal::ParseJsonText(text, origin);
  SmoothingParams params;
  params.theta_x_add = GetField<double>(doc, "theta_x_add", origin);
  params.theta_x_del = GetField<double>(doc, "theta_x_del", origin);
  params.theta_a_add = GetField<double>(doc, "theta_a_add", origin);
  params.theta_a_del = GetField<double>(doc, "theta_a_del", origin);
  try {
    params.Validate();
  } catch (const InputError& e) {
    throw InputError(origin + ": " + e.what());
  }
  return params;
}

SmoothingParams LoadSmoothingParams(const std::filesystem::path& path) {
  return ParseSmoothingParamsJson(internal::ReadTextFile(path), path.string());
}

std::string SmoothingParamsToJson(const SmoothingParams& params) {
  Json doc;
  doc["theta_x_add"] = params.theta_x_add;
  doc["theta_x_del"] = params.theta_x_del;
  doc["theta_a_add"] = params.theta_a_add;
  doc["theta_a_del"] = params.theta_a_del;
  return doc.dump(2) + "\n";
}

RegionTable RegionDistribution(const BudgetVector& budget,
                               const SmoothingParams& params) {
  if (!budget.IsNonNegative()) {
    throw InputError("region distribution: negative budget " +
                     ToString(budget));
  }
  params.ValidateFor(budget);
  const AgreementMarginal x = Marginal(budget.x_add, budget.x_del,
                                       params.theta_x_add, params.theta_x_del);
  const AgreementMarginal a = Marginal(budget.a_add, budget.a_del,
                                       params.theta_a_add, params.theta_a_del);
  RegionTable table;
  table.budget = budget;
  table.rows.reserve(x.clean.size() * a.clean.size());
  for (std::size_t qx = 0; qx < x.clean.size(); ++qx) {
    for (std::size_t qa = 0; qa < a.clean.size(); ++qa) {
      table.rows.push_back({static_cast<int>(qx), static_cast<int>(qa),
                            x.clean[qx] * a.clean[qa],
                            x.perturbed[qx] * a.perturbed[qa]});
    }
  }
  return table;
}

double NpLowerBound(const RegionTable& table, double p_clean_hit) {
  if (!(p_clean_hit >= 0.0 && p_clean_hit <= 1.0)) {
    throw InputError("np lower bound: probability must lie in [0, 1]");
  }
  const std::vector<RegionRow>& rows = table.rows;
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  // Descending p_clean / p_perturbed without dividing; rows with zero
  // perturbed mass compare as infinite ratios.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t lhs, std::size_t rhs) {
                     const RegionRow& a = rows[lhs];
                     const RegionRow& b = rows[rhs];
                     const bool a_inf = a.p_perturbed == 0.0;
                     const bool b_inf = b.p_perturbed == 0.0;
                     if (a_inf != b_inf) return a_inf;
                     if (a_inf) return false;
                     return a.p_clean * b.p_perturbed >
                            b.p_clean * a.p_perturbed;
                   });
  double remaining = p_clean_hit;
  double bound = 0.0;
  for (std::size_t index : order) {
    if (remaining <= 0.0) break;
    const RegionRow& row = rows[index];
    if (row.p_clean <= 0.0) {
      continue;
    }
    if (row.p_clean <= remaining) {
      bound += row.p_perturbed;
      remaining -= row.p_clean;
    } else {
      bound += row.p_perturbed * (remaining / row.p_clean);
      remaining = 0.0;
    }
  }
  return std::clamp(bound, 0.0, 1.0);
}

bool IsCertified(const BudgetVector& budget, double p_clean_hit,
                 const SmoothingParams& params) {
  if (budget.IsZero()) return true;
  const RegionTable table = RegionDistribution(budget, params);
  return NpLowerBound(table, p_clean_hit) - 0.5 > kCertificationMargin;
}

int DemoPredict(const Graph& graph, NodeId node, int layers, int num_classes) {
  if (num_classes > graph.num_features()) {
    throw InputError("demo classifier needs at least as many features (" +
                     std::to_string(graph.num_features()) + ") as classes (" +
                     std::to_string(num_classes) + ")");
  }
  if (num_classes < 1 || layers < 1) {
    throw InputError("demo classifier needs num_classes >= 1 and layers >= 1");
  }
  if (node < 0 || node >= graph.num_nodes()) {
    throw InputError("demo classifier: node " + std::to_string(node) +
                     " out of range");
  }
  const std::vector<int> dist = graph.HopDistancesTo(node, layers);
  std::vector<int> scores(num_classes, 0);
  for (NodeId m = 0; m < graph.num_nodes(); ++m) {
    if (dist[m] < 0) continue;
    for (int f : graph.AttributeRow(m)) {
      if (f >= num_classes) break;
      ++scores[f];
    }
  }
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) -
                          scores.begin());
}

std::vector<SmoothedPrediction> EstimatePredictions(
    const Graph& graph, const SmoothingParams& params,
    const EstimationOptions& options) {
  params.Validate();
  if (options.class_samples < 1 || options.probability_samples < 1) {
    throw InputError("sample counts must be at least 1");
  }
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw InputError("alpha must lie in (0, 1)");
  }
  const int n = graph.num_nodes();
  if (n == 0) return {};
  // Surfaces a bad class count before any thread starts.
  DemoPredict(graph, 0, options.layers, options.num_classes);
  const double corrected_alpha = options.alpha / n;

  std::vector<SmoothedPrediction> result(n);
  auto estimate = [&](NodeId node) {
    std::vector<std::int64_t> votes(options.num_classes, 0);
    for (std::int64_t i = 0; i < options.class_samples; ++i) {
      const Graph sample = SampleGraph(
          graph, params,
          DeriveSeed(options.seed, node, 0, static_cast<std::uint64_t>(i)));
      ++votes[DemoPredict(sample, node, options.layers, options.num_classes)];
    }
    const int majority = static_cast<int>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < options.probability_samples; ++i) {
      const Graph sample = SampleGraph(
          graph, params,
          DeriveSeed(options.seed, node, 1, static_cast<std::uint64_t>(i)));
      if (DemoPredict(sample, node, options.layers, options.num_classes) ==
          majority) {
        ++hits;
      }
    }
    result[node] = {node, majority,
                    ClopperPearsonLower(hits, options.probability_samples,
                                        corrected_alpha)};
  };

  int threads = options.num_threads > 0
                    ? options.num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int node = next++; node < n; node = next++) estimate(node);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

std::vector<SmoothedPrediction> ParsePredictionsJson(
    const std::string& text, const std::string& origin) {
  const Json doc = internal::ParseJsonText(text, origin);
  if (!doc.is_array()) {
    throw InputError(origin + ": predictions must be a JSON array");
  }
  std::vector<SmoothedPrediction> preds;
  preds.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = origin + "[" + std::to_string(i) + "]";
    SmoothedPrediction p;
    p.node = GetField<int>(doc[i], "node", where);
    p.majority_class = GetField<int>(doc[i], "class", where);
    p.p_lower = GetField<double>(doc[i], "p_lower", where);
    if (p.node < 0) throw InputError(where + ": negative node id");
    if (p.majority_class < 0) throw InputError(where + ": negative class");
    if (!(p.p_lower >= 0.0 && p.p_lower <= 1.0)) {
      throw InputError(where + ": p_lower must lie in [0, 1]");
    }
    preds.push_back(p);
  }
  std::sort(preds.begin(), preds.end(),
            [](const auto& a, const auto& b) { return a.node < b.node; });
  for (std::size_t i = 1; i < preds.size(); ++i) {
    if (preds[i].node == preds[i - 1].node) {
      throw InputError(origin + ": duplicate prediction for node " +
                       std::to_string(preds[i].node));
    }
  }
  return preds;
}

std::vector<SmoothedPrediction> LoadPredictions(
    const std::filesystem::path& path) {
  return ParsePredictionsJson(internal::ReadTextFile(path), path.string());
}

std::string PredictionsToJson(const std::vector<SmoothedPrediction>& preds) {
  Json doc = Json::array();
  for (const SmoothedPrediction& p : preds) {
    doc.push_back(
        {{"node", p.node}, {"class", p.majority_class}, {"p_lower", p.p_lower}});
  }
  return doc.dump(2) + "\n";
}

void SavePredictions(const std::vector<SmoothedPrediction>& preds,
                     const std::filesystem::path& path) {
  internal::WriteTextFile(path, PredictionsToJson(preds));
}

}  // namespace collcert
