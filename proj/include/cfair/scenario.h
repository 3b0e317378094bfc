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

// Scenario files: a YAML document describing both groups, optional extras
// for the individual commands, and output locations. The schema is
// documented in README.md.

#ifndef CFAIR_SCENARIO_H_
#define CFAIR_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfair/active.h"
#include "cfair/detect.h"
#include "cfair/dist.h"
#include "cfair/tradeoff.h"

namespace cfair {

// The scenario file could not be read or an output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepRange {
  double lo = 0.0;
  double hi = 0.0;
  int points = 151;
};

struct NamedPair {
  std::string name;
  DistributionPair pair;
};

struct DetectorSpec {
  std::string group;  // "unprivileged" or "privileged"
  double tau = 0.0;
};

struct Scenario {
  explicit Scenario(GroupScenario g) : groups(std::move(g)) {}

  GroupScenario groups;
  std::optional<JointPair> joint;
  std::vector<NamedPair> pairs;

  // Unset ranges default to [tau0*, 0] of the relevant fair solve.
  std::optional<SweepRange> tradeoff_sweep;
  std::optional<SweepRange> active_sweep;
  int default_points = 151;

  std::string tradeoff_out = "tradeoff.csv";
  std::string active_out = "tradeoff_active.csv";
  std::string ideal_dump;  // empty: no dump

  std::uint64_t mc_samples = 1000000;
  std::uint64_t mc_seed = 42;
  std::vector<DetectorSpec> detectors;

  Priors kl_priors;

  // Non-fatal notes gathered while loading, e.g. a discretization range
  // that misses more than 1e-6 of a gaussian's mass.
  std::vector<std::string> warnings;
};

// Throws IoError when the file cannot be read, and cfair::Error (with the
// violated invariant in the message) when its contents are invalid.
Scenario LoadScenario(const std::string& path);
Scenario ParseScenario(const std::string& text);

}  // namespace cfair

#endif  // CFAIR_SCENARIO_H_
