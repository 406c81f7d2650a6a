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

#include "collcert/stats.h"

#include <cmath>
#include <cstdint>

#include "collcert/errors.h"
#include "gtest/gtest.h"
#include "support/stat_oracles.h"

namespace collcert {
namespace {

TEST(ClopperPearsonTest, ZeroSuccessesGiveZero) {
  EXPECT_EQ(ClopperPearsonLower(0, 17, 0.05), 0.0);
}

TEST(ClopperPearsonTest, AllSuccessesHaveClosedForm) {
  EXPECT_NEAR(ClopperPearsonLower(100, 100, 0.05), 0.970487, 1e-6);
  EXPECT_DOUBLE_EQ(ClopperPearsonLower(100, 100, 0.05),
                   std::pow(0.05, 0.01));
}

TEST(ClopperPearsonTest, HalfSuccessesAgainstTailOracle) {
  const double lower = ClopperPearsonLower(50, 100, 0.01);
  EXPECT_GT(lower, 0.35);
  EXPECT_LT(lower, 0.50);
  EXPECT_NEAR(lower, testing::BinomialTailLowerLimit(50, 100, 0.01), 1e-8);
}

TEST(ClopperPearsonTest, GridMatchesTailOracle) {
  for (std::int64_t n : {10, 100, 1000}) {
    for (std::int64_t k : {std::int64_t{0}, n / 2, n}) {
      for (double alpha : {0.05, 0.01}) {
        EXPECT_NEAR(ClopperPearsonLower(k, n, alpha),
                    testing::BinomialTailLowerLimit(k, n, alpha), 1e-8)
            << "k=" << k << " n=" << n << " alpha=" << alpha;
      }
    }
  }
}

TEST(ClopperPearsonTest, BelowEmpiricalMean) {
  for (std::int64_t k = 1; k < 40; k += 3) {
    EXPECT_LT(ClopperPearsonLower(k, 40, 0.1), static_cast<double>(k) / 40);
  }
}

TEST(ClopperPearsonTest, RejectsBadArguments) {
  EXPECT_THROW(ClopperPearsonLower(5, 4, 0.05), InputError);
  EXPECT_THROW(ClopperPearsonLower(-1, 4, 0.05), InputError);
  EXPECT_THROW(ClopperPearsonLower(1, 4, 0.0), InputError);
  EXPECT_THROW(ClopperPearsonLower(1, 4, 1.0), InputError);
}

}  // namespace
}  // namespace collcert
