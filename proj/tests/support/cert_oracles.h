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

#ifndef COLLCERT_TESTS_SUPPORT_CERT_ORACLES_H_
#define COLLCERT_TESTS_SUPPORT_CERT_ORACLES_H_

#include <cstdint>
#include <random>

#include "collcert/collective.h"

namespace collcert::testing {

// Minimum, over every admissible budget allocation, of the number of targets
// whose reachable front has no point below the perturbation mass inside
// their receptive field. An allocation assigns attribute flip counts per
// node (within bit capacity and local budgets) and a set of flipped
// adjacency positions; it is admissible when global and local budgets hold
// and at most sigma nodes cover every perturbed row and at least one
// endpoint of every flipped edge. Edge flips count toward both endpoints'
// local tallies.
int BruteForceCollective(const CertInstance& inst,
                         std::int64_t* leaves_visited = nullptr);

struct RandomInstanceOptions {
  int max_nodes = 6;
  int max_edges = 8;
  int max_budget = 3;
  int max_front_points = 3;
  // Probability of allowing edge additions; such instances use at most
  // four nodes to keep the enumeration small.
  double addition_prob = 0.2;
  double local_prob = 0.4;
  double sigma_prob = 0.4;
};

// Random instance with random monotone fronts over the global budget box.
CertInstance RandomCertInstance(std::mt19937_64& rng,
                                const RandomInstanceOptions& options);

}  // namespace collcert::testing

#endif  // COLLCERT_TESTS_SUPPORT_CERT_ORACLES_H_
