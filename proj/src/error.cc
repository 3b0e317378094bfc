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

#include "cfair/error.h"

#include <string>

namespace cfair {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDistribution:
      return "InvalidDistribution";
    case ErrorKind::kNotDistinct:
      return "NotDistinct";
    case ErrorKind::kBackendMismatch:
      return "BackendMismatch";
    case ErrorKind::kSupportMismatch:
      return "SupportMismatch";
    case ErrorKind::kBackendUnsupported:
      return "BackendUnsupported";
    case ErrorKind::kNonFiniteNormalizer:
      return "NonFiniteNormalizer";
    case ErrorKind::kThresholdOutOfRange:
      return "ThresholdOutOfRange";
    case ErrorKind::kBracketFailure:
      return "BracketFailure";
    case ErrorKind::kGroupOrderError:
      return "GroupOrderError";
    case ErrorKind::kNotBiasedScenario:
      return "NotBiasedScenario";
    case ErrorKind::kNegativeAdjustedExponent:
      return "NegativeAdjustedExponent";
    case ErrorKind::kInvalidArgument:
      return "InvalidArgument";
    case ErrorKind::kInternalInconsistency:
      return "InternalInconsistency";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace cfair
