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

#include "collcert/lp/lp_format.h"

#include <random>
#include <string>

#include "collcert/errors.h"
#include "gtest/gtest.h"
#include "support/lp_oracles.h"

namespace collcert::lp {
namespace {

void ExpectSameStructure(const LinearProblem& a, const LinearProblem& b) {
  ASSERT_EQ(a.num_variables(), b.num_variables());
  ASSERT_EQ(a.num_constraints(), b.num_constraints());
  for (int j = 0; j < a.num_variables(); ++j) {
    EXPECT_EQ(a.variable(j).kind, b.variable(j).kind);
    EXPECT_EQ(a.variable(j).lower, b.variable(j).lower);
    EXPECT_EQ(a.variable(j).upper, b.variable(j).upper);
  }
  EXPECT_EQ(a.objective(), b.objective());
  EXPECT_EQ(a.objective_offset(), b.objective_offset());
  for (int i = 0; i < a.num_constraints(); ++i) {
    EXPECT_EQ(a.constraint(i).terms, b.constraint(i).terms);
    EXPECT_EQ(a.constraint(i).cmp, b.constraint(i).cmp);
    EXPECT_EQ(a.constraint(i).rhs, b.constraint(i).rhs);
  }
}

int CountRows(const std::string& text) {
  const auto begin = text.find("Subject To\n");
  const auto end = text.find("Bounds\n");
  int rows = 0;
  for (auto pos = text.find(':', begin); pos < end;
       pos = text.find(':', pos + 1)) {
    ++rows;
  }
  return rows;
}

TEST(LpFormatTest, TrivialLpHasOneRow) {
  LinearProblem p;
  const int x = p.AddVariable("x", VarKind::kContinuous, 0, 1);
  const int y = p.AddVariable("y", VarKind::kContinuous, 0, 1);
  p.SetObjectiveCoefficient(x, 1);
  p.SetObjectiveCoefficient(y, 1);
  p.AddConstraint({{x, 1}, {y, 1}}, Comparator::kGreaterEq, 1);
  const std::string text = ToLpFormat(p);
  EXPECT_EQ(CountRows(text), 1);
  EXPECT_NE(text.find("Minimize\n"), std::string::npos);
  EXPECT_NE(text.find("End\n"), std::string::npos);
}

TEST(LpFormatTest, BinaryListedUnderBinaries) {
  LinearProblem p;
  p.AddVariable("flag", VarKind::kBinary, 0, 1);
  p.AddVariable("count", VarKind::kInteger, 0, 4);
  const std::string text = ToLpFormat(p);
  const auto binaries = text.find("Binaries\n");
  ASSERT_NE(binaries, std::string::npos);
  EXPECT_NE(text.find(" flag", binaries), std::string::npos);
  const auto generals = text.find("Generals\n");
  ASSERT_NE(generals, std::string::npos);
  EXPECT_NE(text.find(" count", generals), std::string::npos);
}

TEST(LpFormatTest, NamesAreSanitizedAndUnique) {
  LinearProblem p;
  p.AddVariable("Q[0,1]", VarKind::kContinuous, 0, 1);
  p.AddVariable("Q(0.1)", VarKind::kContinuous, 0, 1);
  p.AddVariable("2nd", VarKind::kContinuous, 0, 1);
  const std::string text = ToLpFormat(p);
  EXPECT_NE(text.find("Q_0_1_ "), std::string::npos);
  EXPECT_NE(text.find("Q_0_1__1"), std::string::npos);
  EXPECT_NE(text.find("v_2nd"), std::string::npos);
  EXPECT_EQ(text.find('['), std::string::npos);
}

TEST(LpFormatTest, RoundTripIsExact) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    LinearProblem p = testing::RandomMilp(rng, 6, 6);
    p.SetObjectiveOffset(i % 3 == 0 ? 0.0 : 1.0 / 3.0);
    p.SetObjectiveCoefficient(0, 0.1);
    p.AddConstraint({}, Comparator::kGreaterEq, -1.0);
    ExpectSameStructure(p, ParseLpFormat(ToLpFormat(p)));
  }
}

TEST(LpFormatTest, LongRowsWrap) {
  LinearProblem p;
  std::vector<Term> row;
  for (int j = 0; j < 200; ++j) {
    row.push_back({p.AddVariable("variable_" + std::to_string(j),
                                 VarKind::kContinuous, 0, 1),
                   1.0 + j});
  }
  p.AddConstraint(row, Comparator::kLessEq, 3);
  const std::string text = ToLpFormat(p);
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    EXPECT_LE(end - start, 255u);
    start = end + 1;
  }
  ExpectSameStructure(p, ParseLpFormat(text));
}

TEST(LpFormatTest, ParserRejectsMaximize) {
  EXPECT_THROW(ParseLpFormat("Maximize\n obj: x\nEnd\n"), InputError);
  EXPECT_THROW(ParseLpFormat("Minimize\n obj: x\n"), InputError);
}

}  // namespace
}  // namespace collcert::lp
