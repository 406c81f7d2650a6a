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

#ifndef COLLCERT_SAMPLING_H_
#define COLLCERT_SAMPLING_H_

#include <cstdint>

#include "collcert/graph.h"
#include "collcert/smoothing.h"

namespace collcert {

// SplitMix64 finalizer.
std::uint64_t MixBits(std::uint64_t x);

// Splittable seed derivation: folds each component into the state with
// state = MixBits(state + 0x9e3779b97f4a7c15 * (component + 1)).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c);

// SplitMix64 pseudo-random stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform in (0, 1].
  double UniformPositive() { return 1.0 - Uniform(); }

 private:
  std::uint64_t state_;
};

// Draws one graph from the smoothing distribution centered at `graph`.
// Set bits are visited one by one and unset positions are reached by
// geometric skipping. Runs in time linear in set bits plus flipped bits.
Graph SampleGraph(const Graph& graph, const SmoothingParams& params,
                  std::uint64_t seed);

}  // namespace collcert

#endif  // COLLCERT_SAMPLING_H_
