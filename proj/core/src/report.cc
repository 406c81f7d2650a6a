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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "collcert/errors.h"
#include "collcert/version.h"
#include "json.hpp"

namespace collcert {
namespace {

std::string Format(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

bool IsContiguousFromZero(const std::vector<ReportRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].radius != static_cast<int>(i)) return false;
  }
  return !rows.empty();
}

}  // namespace

double AverageCertifiableRadius(
    const std::vector<std::pair<int, double>>& curve) {
  if (curve.empty()) throw InputError("average radius: empty curve");
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto [radius, ratio] = curve[i];
    if (radius != static_cast<int>(i)) {
      throw InputError("average radius: radii must be 0, 1, 2, ... without "
                       "gaps");
    }
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
      throw InputError("average radius: ratio outside [0, 1]");
    }
    weighted += radius * ratio;
    total += ratio;
  }
  return total > 0.0 ? weighted / total : 0.0;
}

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

CertificationReport MakeReport(const std::vector<SweepRow>& rows,
                               PerturbationType axis, int num_targets) {
  CertificationReport report;
  report.axis = axis;
  report.num_targets = num_targets;
  report.version = kVersion;
  const double denom = num_targets > 0 ? num_targets : 1.0;
  for (const SweepRow& row : rows) {
    report.rows.push_back({row.radius, row.collective,
                           num_targets > 0 ? row.collective / denom : 1.0,
                           row.naive,
                           num_targets > 0 ? row.naive / denom : 1.0,
                           row.seconds, std::string(lp::ToString(row.status))});
  }
  if (IsContiguousFromZero(report.rows)) {
    std::vector<std::pair<int, double>> collective;
    std::vector<std::pair<int, double>> naive;
    for (const ReportRow& row : report.rows) {
      collective.emplace_back(row.radius, row.collective_ratio);
      naive.emplace_back(row.radius, row.naive_ratio);
    }
    report.collective_radius = AverageCertifiableRadius(collective);
    report.naive_radius = AverageCertifiableRadius(naive);
  }
  if (!report.rows.empty()) report.truncation_radius = report.rows.back().radius;
  return report;
}

std::string ReportToCsv(const CertificationReport& report,
                        bool record_timings) {
  std::ostringstream out;
  out << "radius,collective_count,collective_ratio,naive_count,naive_ratio,"
         "seconds\n";
  for (const ReportRow& row : report.rows) {
    out << row.radius << ',' << row.collective_count << ','
        << Format("%.6f", row.collective_ratio) << ',' << row.naive_count
        << ',' << Format("%.6f", row.naive_ratio) << ','
        << Format("%.3f", record_timings ? row.seconds : 0.0) << '\n';
  }
  return out.str();
}

std::string ReportToJson(const CertificationReport& report,
                         bool record_timings) {
  using Json = nlohmann::ordered_json;
  Json doc;
  doc["axis"] = std::string(ToString(report.axis));
  doc["mode"] = report.mode;
  doc["num_targets"] = report.num_targets;
  Json rows = Json::array();
  for (const ReportRow& row : report.rows) {
    rows.push_back({{"radius", row.radius},
                    {"collective_count", row.collective_count},
                    {"collective_ratio", row.collective_ratio},
                    {"naive_count", row.naive_count},
                    {"naive_ratio", row.naive_ratio},
                    {"seconds", record_timings ? row.seconds : 0.0},
                    {"status", row.status}});
  }
  doc["rows"] = std::move(rows);
  Json summary;
  summary["average_certifiable_radius_collective"] =
      report.collective_radius ? Json(*report.collective_radius) : Json();
  summary["average_certifiable_radius_naive"] =
      report.naive_radius ? Json(*report.naive_radius) : Json();
  summary["truncation_radius"] = report.truncation_radius;
  doc["summary"] = std::move(summary);
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(report.config_hash));
  doc["provenance"] = {{"config_hash", hash},
                       {"seed", report.seed},
                       {"version", report.version}};
  return doc.dump(2) + "\n";
}

std::string ReportToSvg(const CertificationReport& report, bool log_x) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 400.0;
  constexpr double kLeft = 60.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 20.0;
  constexpr double kBottom = 50.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto transform = [&](int radius) {
    return log_x ? std::log1p(static_cast<double>(radius))
                 : static_cast<double>(radius);
  };
  double x_max = 1.0;
  for (const ReportRow& row : report.rows) {
    x_max = std::max(x_max, transform(row.radius));
  }
  auto px = [&](int radius) { return kLeft + plot_w * transform(radius) / x_max; };
  auto py = [&](double ratio) { return kTop + plot_h * (1.0 - ratio); };
  auto polyline = [&](bool collective) {
    std::ostringstream points;
    for (const ReportRow& row : report.rows) {
      points << Format("%.2f", px(row.radius)) << ','
             << Format("%.2f",
                       py(collective ? row.collective_ratio : row.naive_ratio))
             << ' ';
    }
    return points.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << Format("%.2f", py(tick) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << Format("%.2f", tick)
        << "</text>\n";
  }
  for (const ReportRow& row : report.rows) {
    svg << "<text x=\"" << Format("%.2f", px(row.radius)) << "\" y=\""
        << kTop + plot_h + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << row.radius << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">radius "
      << ToString(report.axis) << (log_x ? " (log scale)" : "")
      << "</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
         "points=\""
      << polyline(true) << "\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
         "stroke-dasharray=\"2,4\" points=\""
      << polyline(false) << "\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w - 4 << "\" y=\"" << kTop + 14
      << "\" font-size=\"11\" text-anchor=\"end\">solid: collective, "
         "dotted: naive</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace collcert
