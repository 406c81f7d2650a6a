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

#ifndef COLLCERT_STATS_H_
#define COLLCERT_STATS_H_

#include <cstdint>

namespace collcert {

// One-sided Clopper-Pearson lower confidence bound for a binomial success
// probability after `successes` hits in `trials` draws: the p at which
// Pr[Bin(trials, p) >= successes] = alpha. Found by bisection to an absolute
// tolerance of 1e-10 and rounded down to the lower end of the final bracket.
// Returns 0 when successes = 0 and alpha^(1/trials) when successes = trials.
//
// Throws InputError unless 0 <= successes <= trials, trials >= 1 and
// 0 < alpha < 1.
double ClopperPearsonLower(std::int64_t successes, std::int64_t trials,
                           double alpha);

}  // namespace collcert

#endif  // COLLCERT_STATS_H_
