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

// Accuracy / equal-opportunity trade-off between an unprivileged (Z=0) and
// a privileged (Z=1) group, each classified by its own likelihood-ratio
// detector.
//
// Accuracy of a group is its error exponent e_e = min(E_FP, E_FN); fairness
// is measured by the gap between the two groups' FNR exponents.

#ifndef CFAIR_TRADEOFF_H_
#define CFAIR_TRADEOFF_H_

#include <string_view>
#include <vector>

#include "cfair/detect.h"
#include "cfair/dist.h"
#include "cfair/lgf.h"

namespace cfair {

// Chernoff informations closer than this are treated as equal (unbiased).
inline constexpr double kUnbiasedTolerance = 1e-8;

struct GroupPriors {
  double unpriv = 0.5;  // lambda_0
  double priv = 0.5;    // lambda_1
};

struct GroupScenario {
  DistributionPair unpriv;
  DistributionPair priv;
  Priors unpriv_labels;
  Priors priv_labels;
  GroupPriors groups;

  void Validate() const;
};

enum class Regime { kUnbiased, kBiased };
std::string_view RegimeName(Regime regime);

struct FairSolution {
  double tau0 = 0.0;
  double tau1 = 0.0;
  ExponentReport report0{};
  ExponentReport report1{};
  double objective = 0.0;
  Regime regime = Regime::kBiased;
};

// Chernoff informations of both groups and whether they disagree with the
// unprivileged / privileged labeling (C(unpriv) > C(priv)).
struct GroupOrder {
  double c_unpriv;
  double c_priv;
  bool contradicts_labels;
};
GroupOrder CheckGroupOrder(const GroupScenario& s);

// |E_FN,T0(tau0) - E_FN,T1(tau1)| with matched LR detectors per group.
double FairnessGap(const GroupScenario& s, double tau0, double tau1);

// Threshold tau at which the LR detector of `ctx` reaches E_FN(tau) =
// target, found by solving g(u) = u L_pos'(u) - L_pos(u) = target on the
// side of argmin L_pos that the target calls for. Throws
// kThresholdOutOfRange when a finite grid cannot reach the target.
double FnrMatchingThreshold(const LgfContext& ctx, double target);

// Both groups may move: unprivileged stays Bayes optimal (tau0 = 0) and the
// privileged threshold rises until its FNR exponent drops to C(unpriv).
FairSolution SolveOptBoth(const GroupScenario& s);

// Only the unprivileged threshold moves (tau1 = 0): tau0 < 0 such that
// E_FN,T0(tau0) = C(priv).
FairSolution SolveOptOne(const GroupScenario& s);

struct CurvePoint {
  double tau0;
  double e_fp;
  double e_fn;
  double e_e;
  double fairness_gap;
};

struct TradeoffCurve {
  std::vector<CurvePoint> points;
  double reference_tau1 = 0.0;
  double reference_e_fn = 0.0;
  // Set when a requested endpoint was outside the valid exponent interval
  // and had to be moved inside it.
  bool range_shrunk = false;
};

// n thresholds evenly spaced over [lo, hi] for the unprivileged detector,
// privileged detector held at tau1 = 0.
TradeoffCurve SweepCurve(const GroupScenario& s, double lo, double hi, int n);

// Overall error exponent when groups and labels have unequal priors:
// min over the four FP/FN terms of E - log(4 * pi * lambda).
double OverallExponentUnequalGroups(const GroupScenario& s, double tau0,
                                    double tau1);

}  // namespace cfair

#endif  // CFAIR_TRADEOFF_H_
