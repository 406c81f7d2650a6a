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

// Command-line front end: certify, pareto and export subcommands.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "collcert/harness.h"
#include "collcert/version.h"

namespace {

struct CommonFlags {
  std::string config;
  std::string mode;
  std::uint64_t seed = 0;
};

void AddCommonFlags(CLI::App* command, CommonFlags& flags) {
  command->add_option("config", flags.config, "Run configuration (JSON)")
      ->required();
  command->add_option("--mode", flags.mode, "Override the solve mode")
      ->check(CLI::IsMember({"exact", "relaxed"}));
  command->add_option("--seed", flags.seed, "Override the sampling seed");
}

collcert::RunOverrides MakeOverrides(const CLI::App* command,
                                     const CommonFlags& flags) {
  collcert::RunOverrides overrides;
  if (command->count("--mode") > 0) overrides.mode = flags.mode;
  if (command->count("--seed") > 0) overrides.seed = flags.seed;
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective robustness certificates for graph classifiers"};
  app.set_version_flag("--version", std::string(collcert::kVersion));
  app.require_subcommand(1);

  CommonFlags certify_flags;
  CLI::App* certify = app.add_subcommand(
      "certify", "Sweep a budget axis and write report.csv/json and curve.svg");
  AddCommonFlags(certify, certify_flags);

  CommonFlags pareto_flags;
  CLI::App* pareto =
      app.add_subcommand("pareto", "Compute base-certificate fronts");
  AddCommonFlags(pareto, pareto_flags);

  CommonFlags export_flags;
  std::string radius;
  CLI::App* export_cmd = app.add_subcommand(
      "export", "Write the certification problem at one budget as an LP file");
  AddCommonFlags(export_cmd, export_flags);
  export_cmd
      ->add_option("--radius", radius,
                   "Budget, e.g. x_add=2,x_del=0,a_add=0,a_del=1")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? collcert::kExitOk : collcert::kExitInputError;
  }

  if (certify->parsed()) {
    return collcert::RunCertify(certify_flags.config,
                                MakeOverrides(certify, certify_flags),
                                std::cout, std::cerr);
  }
  if (pareto->parsed()) {
    return collcert::RunPareto(pareto_flags.config,
                               MakeOverrides(pareto, pareto_flags), std::cout,
                               std::cerr);
  }
  collcert::RunOverrides overrides = MakeOverrides(export_cmd, export_flags);
  overrides.radius = radius;
  return collcert::RunExport(export_flags.config, overrides, std::cout,
                             std::cerr);
}
