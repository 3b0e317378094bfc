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

// Command implementations behind the `cfair` executable. They take parsed
// options and write to caller-supplied streams so they can be driven
// in-process by tests.

#ifndef CFAIR_COMMANDS_H_
#define CFAIR_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "cfair/error.h"
#include "cfair/tradeoff.h"

namespace cfair {

enum class Command { kChernoff, kTradeoff, kFair, kIdeal, kValidate };

std::optional<Command> ParseCommand(std::string_view name);

enum class FairMode { kBoth, kOne };

struct CommandOptions {
  Command command = Command::kChernoff;
  std::string scenario_path;
  std::optional<std::string> out;
  FairMode mode = FairMode::kBoth;
  bool kl_min = false;
  bool active = false;
  std::optional<std::uint64_t> seed;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kOtherFailure = 1;
inline constexpr int kInvalidScenario = 2;
inline constexpr int kIo = 3;
inline constexpr int kDegenerate = 4;
inline constexpr int kInternal = 5;
}  // namespace exit_code

int ExitCodeFor(ErrorKind kind);

// Runs one command. Never throws; failures are reported on `err` and
// mapped to an exit code.
int RunCommand(const CommandOptions& options, std::ostream& out,
               std::ostream& err);

// Header `tau0,e_fp,e_fn,e_e,fairness_gap`, 12 significant digits, `\n`.
std::string TradeoffCsv(const TradeoffCurve& curve);

}  // namespace cfair

#endif  // CFAIR_COMMANDS_H_
