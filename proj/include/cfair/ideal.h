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

// Ideal distributions for the unprivileged group: a pair of exponential
// tilts (P0^(1-w) P1^w, P0^(1-v) P1^v) whose Bayes detector coincides with
// the equal-opportunity detector on the observed pair.
//
// The Bayes statistic of a tilted pair is (v - w) (T(x) - s(w, v)) where
// s(w, v) is the secant slope of L_neg between w and v. Matching the fair
// threshold tau0* therefore means choosing w, v on a chord of L_neg with
// slope tau0*.

#ifndef CFAIR_IDEAL_H_
#define CFAIR_IDEAL_H_

#include <cstddef>

#include "cfair/detect.h"
#include "cfair/dist.h"
#include "cfair/tradeoff.h"

namespace cfair {

struct IdealPair {
  DistributionPair pair;
  double w;
  double v;
  double c_ideal;        // C(ideal neg, ideal pos)
  double kl_objective;   // pi0 D(ideal neg || P0) + pi1 D(ideal pos || P1)
  double fair_tau_equiv; // threshold on the observed LR statistic
};

// Fixes v = 1 and solves L_neg(w) + tau0* (1 - w) = 0 for w < 0. Throws
// kNotBiasedScenario when both groups are equally separable.
IdealPair ConstructIdeal(const GroupScenario& s, const Priors& kl_priors = {});

struct IdealVerification {
  // (a) FNR exponent of the ideal Bayes detector on the observed pair
  //     equals C(priv).
  bool fairness_on_given;
  double fairness_residual;
  // (b) C(ideal pair) equals C(priv).
  bool accuracy_on_ideal;
  double accuracy_residual;
  // (c) the ideal Bayes statistic is a positive rescaling of the observed
  //     LR statistic, shifted so that 0 maps to the fair threshold.
  bool detector_equivalent;
  double scale;
  double implied_tau;     // observed-statistic threshold the ideal rule uses
  double reference_tau;   // fair threshold computed from (original, priv)
  double affine_residual; // misfit of the affine relation between statistics
};

// Diagnostic only: failures are reported in the record, never thrown.
IdealVerification VerifyIdeal(const IdealPair& ip,
                              const DistributionPair& original,
                              const DistributionPair& priv);

struct DecisionComparison {
  std::size_t points;
  std::size_t mismatches;
  // Points within 1e-9 of either decision boundary; decisions there are
  // decided by rounding and are excluded from `mismatches`.
  std::size_t boundary_ties;
};

// Compares accept/reject decisions of the ideal Bayes detector (threshold 0)
// and the observed LR detector at `tau`. Grid pairs are compared on every
// support point. Gaussian pairs are compared at n points x = t * d, t
// evenly spaced on [lo, hi], with d the unit direction of the observed
// mean difference.
DecisionComparison CompareDecisions(const IdealPair& ip,
                                    const DistributionPair& original,
                                    double tau, double lo = -10.0,
                                    double hi = 15.0, int n = 5001);

// Minimizes pi0 D(tilt_w || P0) + pi1 D(tilt_v || P1) over the tilted family
// subject to E_FN of the ideal Bayes detector on the observed pair equal to
// C(priv). Parameterized by v > u_a (the tangent point of slope tau0*), with
// w < u_a solved from the chord condition.
IdealPair SolveKlMinimal(const GroupScenario& s, const Priors& kl_priors = {});

}  // namespace cfair

#endif  // CFAIR_IDEAL_H_
