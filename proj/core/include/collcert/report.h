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

#ifndef COLLCERT_REPORT_H_
#define COLLCERT_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "collcert/budget.h"
#include "collcert/collective.h"

namespace collcert {

// Weighted mean radius sum_r r * w(r) / sum_r w(r) of a certified-ratio
// curve measured at radii 0, 1, ..., R. Radii beyond R count as zero.
// Returns 0 when every ratio is 0. Throws InputError on an empty curve, a
// curve not starting at 0, gaps, or ratios outside [0, 1].
double AverageCertifiableRadius(
    const std::vector<std::pair<int, double>>& curve);

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view data);

struct ReportRow {
  int radius = 0;
  int collective_count = 0;
  double collective_ratio = 0.0;
  int naive_count = 0;
  double naive_ratio = 0.0;
  double seconds = 0.0;
  std::string status;
};

struct CertificationReport {
  PerturbationType axis = PerturbationType::kAttributeAdd;
  std::string mode;
  int num_targets = 0;
  std::vector<ReportRow> rows;
  // Absent when the radii are not the contiguous range 0..R.
  std::optional<double> collective_radius;
  std::optional<double> naive_radius;
  int truncation_radius = 0;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
};

CertificationReport MakeReport(const std::vector<SweepRow>& rows,
                               PerturbationType axis, int num_targets);

// radius,collective_count,collective_ratio,naive_count,naive_ratio,seconds
std::string ReportToCsv(const CertificationReport& report,
                        bool record_timings);
std::string ReportToJson(const CertificationReport& report,
                         bool record_timings);

// Line plot of both certified-ratio curves: collective solid, naive dotted.
std::string ReportToSvg(const CertificationReport& report, bool log_x);

}  // namespace collcert

#endif  // COLLCERT_REPORT_H_
