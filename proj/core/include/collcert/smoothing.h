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

#ifndef COLLCERT_SMOOTHING_H_
#define COLLCERT_SMOOTHING_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "collcert/budget.h"
#include "collcert/graph.h"

namespace collcert {

// Flip probabilities of the sparse bit-flip smoothing distribution. A bit
// that is 1 flips with the *_del probability, a bit that is 0 with *_add.
struct SmoothingParams {
  double theta_x_add = 0.0;
  double theta_x_del = 0.0;
  double theta_a_add = 0.0;
  double theta_a_del = 0.0;

  // Throws InputError unless every probability lies in [0, 1].
  void Validate() const;

  // Throws InputError when a pair used with a nonzero budget satisfies
  // theta_add + theta_del = 1, which makes every likelihood ratio equal 1.
  void ValidateFor(const BudgetVector& budget) const;
};

SmoothingParams LoadSmoothingParams(const std::filesystem::path& path);
SmoothingParams ParseSmoothingParamsJson(const std::string& text,
                                         const std::string& origin);
std::string SmoothingParamsToJson(const SmoothingParams& params);

// A constant-likelihood-ratio region: the sampled graphs in which q_x of the
// perturbed attribute bits and q_a of the perturbed adjacency bits agree
// with the clean graph.
struct RegionRow {
  int q_x = 0;
  int q_a = 0;
  double p_clean = 0.0;
  double p_perturbed = 0.0;
};

struct RegionTable {
  BudgetVector budget;
  // Ordered by q_x, then q_a.
  std::vector<RegionRow> rows;
};

// Region probabilities under clean and perturbed smoothing for an adversary
// that flips exactly `budget` bits. Depends only on the flip counts.
RegionTable RegionDistribution(const BudgetVector& budget,
                               const SmoothingParams& params);

// Worst-case probability that the smoothed classifier keeps its prediction on
// the perturbed graph when it holds with probability `p_clean_hit` on the
// clean one. Greedy Neyman-Pearson fill over regions in descending
// likelihood-ratio order.
double NpLowerBound(const RegionTable& table, double p_clean_hit);

// Membership oracle of the certifiable budget set: the zero budget, or any
// budget whose lower bound exceeds one half.
bool IsCertified(const BudgetVector& budget, double p_clean_hit,
                 const SmoothingParams& params);

// Deterministic k-hop score-sum classifier. Class c scores the number of
// nodes within `layers` hops of `node` (inclusive) whose attribute c is set;
// the highest score wins, lowest class on ties.
int DemoPredict(const Graph& graph, NodeId node, int layers, int num_classes);

struct SmoothedPrediction {
  NodeId node = 0;
  int majority_class = 0;
  double p_lower = 0.0;

  friend bool operator==(const SmoothedPrediction&,
                         const SmoothedPrediction&) = default;
};

struct EstimationOptions {
  int layers = 1;
  int num_classes = 2;
  std::int64_t class_samples = 1000;
  std::int64_t probability_samples = 1000000;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  // 0 selects std::thread::hardware_concurrency().
  int num_threads = 0;
};

// Monte-Carlo smoothed predictions of the demo classifier for every node.
//
// Node n draws its majority-class round from sample seeds
// DeriveSeed(seed, n, 0, i) and its probability round from
// DeriveSeed(seed, n, 1, i), so results do not depend on thread count or
// scheduling. p_lower is the Clopper-Pearson bound at alpha / num_nodes.
std::vector<SmoothedPrediction> EstimatePredictions(
    const Graph& graph, const SmoothingParams& params,
    const EstimationOptions& options);

std::vector<SmoothedPrediction> LoadPredictions(
    const std::filesystem::path& path);
std::vector<SmoothedPrediction> ParsePredictionsJson(const std::string& text,
                                                     const std::string& origin);
std::string PredictionsToJson(const std::vector<SmoothedPrediction>& preds);
void SavePredictions(const std::vector<SmoothedPrediction>& preds,
                     const std::filesystem::path& path);

}  // namespace collcert

#endif  // COLLCERT_SMOOTHING_H_
