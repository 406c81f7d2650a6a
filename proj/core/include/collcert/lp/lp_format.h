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

#ifndef COLLCERT_LP_LP_FORMAT_H_
#define COLLCERT_LP_LP_FORMAT_H_

#include <filesystem>
#include <string>

#include "collcert/lp/linear_problem.h"

namespace collcert::lp {

// Name of the fixed variable that carries a nonzero objective offset in
// exported files.
inline constexpr char kObjectiveConstantName[] = "objective_constant";

// Renders `problem` in CPLEX LP format. Names are sanitized to [A-Za-z0-9_]
// and made unique; every coefficient is printed with 17 significant digits so
// that doubles survive the round trip exactly. Every variable gets an explicit
// line in the Bounds section, in declaration order.
std::string ToLpFormat(const LinearProblem& problem);
void ExportLp(const LinearProblem& problem, const std::filesystem::path& path);

// Reads the subset of CPLEX LP format produced by ToLpFormat (minimization,
// linear rows, bounds, binaries and generals). Throws InputError on anything
// else.
LinearProblem ParseLpFormat(const std::string& text);
LinearProblem LoadLp(const std::filesystem::path& path);

}  // namespace collcert::lp

#endif  // COLLCERT_LP_LP_FORMAT_H_
