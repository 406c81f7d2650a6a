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

#include "collcert/budget.h"

#include "gtest/gtest.h"

namespace collcert {
namespace {

TEST(BudgetTest, NamesRoundTrip) {
  for (PerturbationType t : kAllPerturbationTypes) {
    EXPECT_EQ(ParsePerturbationType(ToString(t)), t);
  }
  EXPECT_FALSE(ParsePerturbationType("x_flip").has_value());
}

TEST(BudgetTest, IndexingAndUnit) {
  BudgetVector b = BudgetVector::Unit(PerturbationType::kEdgeDelete, 3);
  EXPECT_EQ(b.a_del, 3);
  EXPECT_EQ(b[PerturbationType::kEdgeDelete], 3);
  b[PerturbationType::kAttributeAdd] = 2;
  EXPECT_EQ(b.x_add, 2);
  EXPECT_EQ(b.NumNonZero(), 2);
  EXPECT_EQ(ToString(b), "(2,0,0,3)");
}

TEST(BudgetTest, ComponentwiseOrder) {
  EXPECT_TRUE(ComponentwiseLessEq({1, 0, 0, 0}, {1, 2, 0, 0}));
  EXPECT_FALSE(ComponentwiseLessEq({1, 3, 0, 0}, {2, 2, 0, 0}));
  EXPECT_TRUE(BudgetVector{}.IsZero());
  EXPECT_FALSE((BudgetVector{-1, 0, 0, 0}).IsNonNegative());
}

}  // namespace
}  // namespace collcert
