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

#include "collcert/report.h"

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "collcert/errors.h"
#include "gtest/gtest.h"

namespace collcert {
namespace {

bool Contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

TEST(AverageCertifiableRadiusTest, SinglePointAtZero) {
  EXPECT_EQ(AverageCertifiableRadius({{0, 1.0}}), 0.0);
}

TEST(AverageCertifiableRadiusTest, HalvingCurve) {
  EXPECT_NEAR(AverageCertifiableRadius({{0, 1.0}, {1, 0.5}, {2, 0.25}}),
              4.0 / 7.0, 1e-15);
}

TEST(AverageCertifiableRadiusTest, AllZeroIsZero) {
  EXPECT_EQ(AverageCertifiableRadius({{0, 0.0}, {1, 0.0}}), 0.0);
}

TEST(AverageCertifiableRadiusTest, ScaleInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<int, double>> curve;
    const int length = 1 + trial % 9;
    for (int r = 0; r < length; ++r) curve.emplace_back(r, unit(rng));
    const double scale = 0.01 + 0.99 * unit(rng);
    auto scaled = curve;
    for (auto& [r, w] : scaled) w *= scale;
    EXPECT_NEAR(AverageCertifiableRadius(curve),
                AverageCertifiableRadius(scaled), 1e-12);
  }
}

TEST(AverageCertifiableRadiusTest, RejectsMalformedCurves) {
  EXPECT_THROW(AverageCertifiableRadius({}), InputError);
  EXPECT_THROW(AverageCertifiableRadius({{0, 1.0}, {2, 0.5}}), InputError);
  EXPECT_THROW(AverageCertifiableRadius({{1, 1.0}}), InputError);
  EXPECT_THROW(AverageCertifiableRadius({{0, 1.5}}), InputError);
  EXPECT_THROW(AverageCertifiableRadius({{0, -0.1}}), InputError);
}

TEST(Fnv1aTest, ReferenceVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

std::vector<SweepRow> FixtureRows() {
  return {{0, 2, 2, 0.0, lp::SolveStatus::kOptimal, 0.25},
          {1, 2, 2, 0.0, lp::SolveStatus::kOptimal, 0.5},
          {2, 1, 0, 1.0, lp::SolveStatus::kOptimal, 0.75}};
}

TEST(ReportTest, RatiosAndRadii) {
  const CertificationReport report =
      MakeReport(FixtureRows(), PerturbationType::kAttributeAdd, 2);
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_EQ(report.rows[2].collective_ratio, 0.5);
  EXPECT_EQ(report.rows[2].naive_ratio, 0.0);
  ASSERT_TRUE(report.collective_radius.has_value());
  EXPECT_NEAR(*report.collective_radius, 2.0 / 2.5, 1e-15);
  EXPECT_NEAR(*report.naive_radius, 0.5, 1e-15);
  EXPECT_EQ(report.truncation_radius, 2);
}

TEST(ReportTest, NonContiguousRadiiHaveNoAverage) {
  std::vector<SweepRow> rows = FixtureRows();
  rows[1].radius = 5;
  rows[2].radius = 9;
  const CertificationReport report =
      MakeReport(rows, PerturbationType::kAttributeAdd, 2);
  EXPECT_FALSE(report.collective_radius.has_value());
  EXPECT_EQ(report.truncation_radius, 9);
  EXPECT_TRUE(Contains(ReportToJson(report, true),
                       "\"average_certifiable_radius_collective\": null"));
}

TEST(ReportTest, CsvLayout) {
  const CertificationReport report =
      MakeReport(FixtureRows(), PerturbationType::kAttributeAdd, 2);
  EXPECT_EQ(ReportToCsv(report, true),
            "radius,collective_count,collective_ratio,naive_count,"
            "naive_ratio,seconds\n"
            "0,2,1.000000,2,1.000000,0.250\n"
            "1,2,1.000000,2,1.000000,0.500\n"
            "2,1,0.500000,0,0.000000,0.750\n");
  EXPECT_TRUE(Contains(ReportToCsv(report, false),
                       "2,1,0.500000,0,0.000000,0.000\n"));
}

TEST(ReportTest, SvgHasSolidAndDottedCurves) {
  const CertificationReport report =
      MakeReport(FixtureRows(), PerturbationType::kAttributeDelete, 2);
  const std::string svg = ReportToSvg(report, false);
  EXPECT_TRUE(Contains(svg, "<svg"));
  EXPECT_EQ(svg.find("stroke-dasharray"), svg.rfind("stroke-dasharray"));
  EXPECT_TRUE(Contains(svg, "radius x_del"));
  EXPECT_TRUE(Contains(ReportToSvg(report, true), "log scale"));
}

TEST(ReportTest, EmptyTargetSetCountsAsFullyCertified) {
  const CertificationReport report =
      MakeReport({{0, 0, 0, 0.0, lp::SolveStatus::kOptimal, 0.0}},
                 PerturbationType::kEdgeDelete, 0);
  EXPECT_EQ(report.rows[0].collective_ratio, 1.0);
  EXPECT_EQ(report.rows[0].naive_ratio, 1.0);
}

}  // namespace
}  // namespace collcert
