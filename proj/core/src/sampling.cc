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

#include "collcert/sampling.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <utility>
#include <vector>

namespace collcert {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Calls fn(pos) for each position in [0, total) that an independent
// Bernoulli(prob) trial selects, in increasing order.
template <typename Fn>
void ForEachBernoulliHit(std::int64_t total, double prob, SplitMix64& rng,
                         Fn&& fn) {
  if (prob <= 0.0 || total <= 0) return;
  if (prob >= 1.0) {
    for (std::int64_t pos = 0; pos < total; ++pos) fn(pos);
    return;
  }
  const double log_miss = std::log1p(-prob);
  std::int64_t pos = -1;
  while (true) {
    const double skip = std::floor(std::log(rng.UniformPositive()) / log_miss);
    if (skip >= static_cast<double>(total - pos - 1)) return;
    pos += static_cast<std::int64_t>(skip) + 1;
    fn(pos);
  }
}

std::vector<std::vector<int>> SampleAttributes(const Graph& graph,
                                               const SmoothingParams& params,
                                               SplitMix64& rng) {
  const int n = graph.num_nodes();
  const int d = graph.num_features();
  std::vector<std::vector<int>> kept(n);
  for (NodeId node = 0; node < n; ++node) {
    for (int f : graph.AttributeRow(node)) {
      if (!(rng.Uniform() < params.theta_x_del)) kept[node].push_back(f);
    }
  }
  std::vector<std::vector<int>> added(n);
  ForEachBernoulliHit(
      static_cast<std::int64_t>(n) * d, params.theta_x_add, rng,
      [&](std::int64_t pos) {
        const NodeId node = static_cast<NodeId>(pos / d);
        const int f = static_cast<int>(pos % d);
        if (!graph.HasAttribute(node, f)) added[node].push_back(f);
      });
  std::vector<std::vector<int>> rows(n);
  for (NodeId node = 0; node < n; ++node) {
    if (added[node].empty()) {
      rows[node] = std::move(kept[node]);
      continue;
    }
    rows[node].reserve(kept[node].size() + added[node].size());
    std::merge(kept[node].begin(), kept[node].end(), added[node].begin(),
               added[node].end(), std::back_inserter(rows[node]));
  }
  return rows;
}

std::vector<NodePair> SampleEdges(const Graph& graph,
                                  const SmoothingParams& params,
                                  SplitMix64& rng) {
  const std::int64_t n = graph.num_nodes();
  std::vector<NodePair> kept;
  kept.reserve(graph.edges().size());
  for (const NodePair& e : graph.edges()) {
    if (!(rng.Uniform() < params.theta_a_del)) kept.push_back(e);
  }
  std::vector<NodePair> added;
  if (graph.directed()) {
    ForEachBernoulliHit(n * (n - 1), params.theta_a_add, rng,
                        [&](std::int64_t pos) {
                          const auto i = static_cast<NodeId>(pos / (n - 1));
                          const auto r = static_cast<NodeId>(pos % (n - 1));
                          const NodeId j = r < i ? r : r + 1;
                          if (!graph.HasEdge(i, j)) added.emplace_back(i, j);
                        });
  } else {
    // Canonical pairs (i, j), i < j, enumerated row by row.
    std::int64_t row = 0;
    std::int64_t row_start = 0;
    ForEachBernoulliHit(n * (n - 1) / 2, params.theta_a_add, rng,
                        [&](std::int64_t pos) {
                          while (pos >= row_start + (n - 1 - row)) {
                            row_start += n - 1 - row;
                            ++row;
                          }
                          const auto i = static_cast<NodeId>(row);
                          const auto j =
                              static_cast<NodeId>(row + 1 + (pos - row_start));
                          if (!graph.HasEdge(i, j)) added.emplace_back(i, j);
                        });
  }
  if (added.empty()) return kept;
  std::vector<NodePair> edges;
  edges.reserve(kept.size() + added.size());
  std::merge(kept.begin(), kept.end(), added.begin(), added.end(),
             std::back_inserter(edges));
  return edges;
}

}  // namespace

std::uint64_t MixBits(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
  std::uint64_t state = MixBits(seed);
  for (std::uint64_t component : {a, b, c}) {
    state = MixBits(state + kGolden * (component + 1));
  }
  return state;
}

std::uint64_t SplitMix64::Next() {
  state_ += kGolden;
  return MixBits(state_);
}

double SplitMix64::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

Graph SampleGraph(const Graph& graph, const SmoothingParams& params,
                  std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<int>> rows = SampleAttributes(graph, params, rng);
  std::vector<NodePair> edges = SampleEdges(graph, params, rng);
  return Graph::FromCanonical(graph.num_nodes(), graph.num_features(),
                              graph.directed(), std::move(edges),
                              std::move(rows), graph.labels());
}

}  // namespace collcert
