// Copyright 2026 The cfair Authors
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

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cfair/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"Chernoff-information analysis of fairness/accuracy trade-offs"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out;
  std::string mode = "both";
  bool kl_min = false;
  bool active = false;
  std::uint64_t seed = 0;

  const std::map<std::string, std::string> help = {
      {"chernoff", "Chernoff information per group and declared pair"},
      {"tradeoff", "write the fairness/accuracy trade-off curve as CSV"},
      {"fair", "solve for fair thresholds"},
      {"ideal", "construct ideal distributions for the unprivileged group"},
      {"validate", "Monte Carlo error rates against Chernoff bounds"},
  };
  for (const auto& [name, text] : help) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--scenario", scenario, "scenario YAML file")->required();
    sub->add_option("--out", out, "output path");
    if (name == "fair") {
      sub->add_option("--mode", mode, "both|one")
          ->check(CLI::IsMember({"both", "one"}));
    }
    if (name == "ideal") {
      sub->add_flag("--kl-min", kl_min, "minimize KL to the observed pair");
    }
    if (name == "tradeoff") {
      sub->add_flag("--active", active, "also sweep the joint (X, X') pair");
    }
    if (name == "validate") {
      sub->add_option("--seed", seed, "override the Monte Carlo seed");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cfair::exit_code::kInvalidScenario;
  }

  cfair::CommandOptions options;
  const CLI::App* sub = app.get_subcommands().front();
  options.command = *cfair::ParseCommand(sub->get_name());
  options.scenario_path = scenario;
  if (sub->count("--out") > 0) options.out = out;
  options.mode = mode == "one" ? cfair::FairMode::kOne : cfair::FairMode::kBoth;
  options.kl_min = kl_min;
  options.active = active;
  if (sub->get_name() == "validate" && sub->count("--seed") > 0) {
    options.seed = seed;
  }
  return cfair::RunCommand(options, std::cout, std::cerr);
}
