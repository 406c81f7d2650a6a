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

#include "collcert/lp/linear_problem.h"

#include <vector>

#include "collcert/errors.h"
#include "gtest/gtest.h"

namespace collcert::lp {
namespace {

TEST(LinearProblemTest, MergesDuplicateTermsAndDropsZeros) {
  LinearProblem p;
  const int x = p.AddVariable("x", VarKind::kContinuous, 0, 1);
  const int y = p.AddVariable("y", VarKind::kContinuous, 0, 1);
  p.AddConstraint({{x, 1.0}, {y, 2.0}, {x, 3.0}, {y, -2.0}},
                  Comparator::kLessEq, 4.0);
  const std::vector<Term> expected = {{x, 4.0}};
  EXPECT_EQ(p.constraint(0).terms, expected);
}

TEST(LinearProblemTest, BinaryBoundsAreClamped) {
  LinearProblem p;
  const int b = p.AddVariable("b", VarKind::kBinary, -3, 7);
  EXPECT_EQ(p.variable(b).lower, 0.0);
  EXPECT_EQ(p.variable(b).upper, 1.0);
}

TEST(LinearProblemTest, RejectsInvalidInput) {
  LinearProblem p;
  EXPECT_THROW(p.AddVariable("x", VarKind::kContinuous, 2, 1), InputError);
  EXPECT_THROW(p.AddConstraint({{0, 1.0}}, Comparator::kLessEq, 1.0),
               InputError);
}

TEST(LinearProblemTest, ViolationAndIntegrality) {
  LinearProblem p;
  const int x = p.AddVariable("x", VarKind::kInteger, 0, 5);
  const int y = p.AddVariable("y", VarKind::kContinuous, 0, 5);
  p.AddConstraint({{x, 1}, {y, 1}}, Comparator::kGreaterEq, 3);
  p.AddConstraint({{x, 1}, {y, -1}}, Comparator::kEqual, 0);
  const std::vector<double> good = {1.5, 1.5};
  EXPECT_DOUBLE_EQ(p.MaxViolation(good), 0.0);
  EXPECT_DOUBLE_EQ(p.MaxIntegralityViolation(good), 0.5);
  const std::vector<double> bad = {1.0, 0.5};
  EXPECT_DOUBLE_EQ(p.MaxViolation(bad), 1.5);
  EXPECT_FALSE(p.Relaxed().HasIntegerVariables());
}

}  // namespace
}  // namespace collcert::lp
