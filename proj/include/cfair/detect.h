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

// Likelihood-ratio detectors and their exact / simulated error rates.

#ifndef CFAIR_DETECT_H_
#define CFAIR_DETECT_H_

#include <cstdint>

#include "cfair/dist.h"
#include "cfair/lgf.h"

namespace cfair {

struct Priors {
  double neg = 0.5;
  double pos = 0.5;

  // Both strictly positive and summing to one (within 1e-12).
  void Validate() const;
};

// Accepts (predicts Y=1) when log pos(x)/neg(x) >= tau, ties included.
struct Detector {
  DistributionPair base_pair;
  double tau = 0.0;
};

enum class RateMethod { kClosedForm, kGridSum, kMonteCarlo };

struct ErrorRates {
  double p_fp = 0.0;
  double p_fn = 0.0;
  double p_e = 0.0;  // priors.neg * p_fp + priors.pos * p_fn
  RateMethod method = RateMethod::kClosedForm;
  // Monte Carlo only: draws per hypothesis and 95% CI half-widths.
  std::uint64_t samples = 0;
  double ci_fp = 0.0;
  double ci_fn = 0.0;
  double ci_e = 0.0;
};

ErrorRates ComputeErrorRates(const Detector& det,
                             const DistributionPair& eval_pair,
                             const Priors& priors = {});

// Draws `n` points under each hypothesis of `eval_pair` from a counter-based
// generator keyed by `seed`. Work is split into fixed shards so results are
// identical regardless of how many shards run concurrently.
ErrorRates MonteCarloRates(const Detector& det,
                           const DistributionPair& eval_pair, std::uint64_t n,
                           std::uint64_t seed, const Priors& priors = {});

// log(pi0 / pi1).
double BayesThreshold(const Priors& priors);

// min{E_FP - log 2 pi0, E_FN - log 2 pi1}. Throws kNegativeAdjustedExponent
// when the minimum is negative.
double PriorAdjustedExponent(const LgfContext& ctx, double tau,
                             const Priors& priors);

}  // namespace cfair

#endif  // CFAIR_DETECT_H_
