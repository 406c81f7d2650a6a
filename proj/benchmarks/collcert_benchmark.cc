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

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "collcert/collective.h"
#include "collcert/graph.h"
#include "collcert/lp/linear_problem.h"
#include "collcert/lp/simplex.h"
#include "collcert/pareto.h"
#include "collcert/sampling.h"
#include "collcert/smoothing.h"

namespace collcert {
namespace {

Graph RingWithChords(int num_nodes, int num_features, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NodePair> edges;
  for (int i = 0; i < num_nodes; ++i) {
    edges.emplace_back(i, (i + 1) % num_nodes);
    const int j = static_cast<int>(rng() % num_nodes);
    if (j != i && j != (i + 1) % num_nodes && j != (i + num_nodes - 1) % num_nodes) {
      edges.emplace_back(i, j);
    }
  }
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<NodePair> attributes;
  for (int v = 0; v < num_nodes; ++v) {
    for (int f = 0; f < num_features; ++f) {
      if (rng() % 4 == 0) attributes.emplace_back(v, f);
    }
  }
  return Graph::Create(num_nodes, num_features, false, edges, attributes);
}

// Covering LP: minimize c.x subject to random rows A x >= b, 0 <= x <= 10.
lp::LinearProblem CoveringLp(int size) {
  std::mt19937_64 rng(size);
  std::uniform_int_distribution<int> coef(0, 5);
  lp::LinearProblem p;
  for (int j = 0; j < size; ++j) {
    const int x = p.AddVariable("x" + std::to_string(j),
                                lp::VarKind::kContinuous, 0, 10);
    p.SetObjectiveCoefficient(x, 1 + coef(rng));
  }
  for (int i = 0; i < size; ++i) {
    std::vector<lp::Term> terms;
    for (int j = 0; j < size; ++j) {
      if (const int c = coef(rng); c > 3) terms.push_back({j, double(c)});
    }
    p.AddConstraint(std::move(terms), lp::Comparator::kGreaterEq, 4);
  }
  return p;
}

void BM_SolveLp(benchmark::State& state) {
  const lp::LinearProblem p = CoveringLp(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::SolveLp(p));
  }
}
BENCHMARK(BM_SolveLp)->Arg(16)->Arg(64)->Arg(128);

void BM_RegionDistribution(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const SmoothingParams params{0.01, 0.6, 0.001, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(RegionDistribution({r, r, r, r}, params));
  }
}
BENCHMARK(BM_RegionDistribution)->Arg(2)->Arg(8)->Arg(32)->Arg(128);

void BM_ComputeFront(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const SmoothingParams params{0.01, 0.6, 0.001, 0.4};
  const BudgetVector box{r, r, r / 2, r / 2};
  for (auto _ : state) {
    FrontStats stats;
    benchmark::DoNotOptimize(ComputeFront(
        [&](const BudgetVector& b) { return IsCertified(b, 0.99, params); },
        box, 0, &stats));
    state.counters["oracle_calls"] = static_cast<double>(stats.oracle_calls);
  }
}
BENCHMARK(BM_ComputeFront)->Arg(4)->Arg(8)->Arg(16);

void BM_SampleGraph(benchmark::State& state) {
  const Graph g = RingWithChords(static_cast<int>(state.range(0)), 16, 1);
  const SmoothingParams params{0.01, 0.6, 0.001, 0.4};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleGraph(g, params, ++seed));
  }
}
BENCHMARK(BM_SampleGraph)->Arg(100)->Arg(1000);

void BM_Certify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool relaxed = state.range(1) != 0;
  const Graph g = RingWithChords(n, 4, 2);
  ThreatModel tm;
  tm.global = {0, n / 5, 0, 2};
  std::mt19937_64 rng(3);
  CertOptions options;
  options.relaxed = relaxed;
  std::vector<NodeId> targets(n);
  for (NodeId v = 0; v < n; ++v) targets[v] = v;
  const CertInstance inst = MakeInstance(
      g, tm, targets,
      [&](NodeId v) {
        const int depth = 1 + static_cast<int>(rng() % 3);
        return BaseCertificate{
            v, {{0, 0, 0, 1}, {0, depth, 0, 0}}, tm.global};
      },
      1, options);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Certify(inst));
  }
}
BENCHMARK(BM_Certify)
    ->Args({20, 1})
    ->Args({12, 0})
    ->Args({100, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace collcert

BENCHMARK_MAIN();
