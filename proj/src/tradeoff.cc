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

#include "cfair/tradeoff.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfair/error.h"
#include "cfair/numeric.h"

namespace cfair {
namespace {

// Residual allowed on the equal-FNR-exponent constraint of a solution.
constexpr double kFairnessTolerance = 1e-8;

void CheckFairness(const FairSolution& sol) {
  const double gap = std::abs(sol.report0.e_fn - sol.report1.e_fn);
  if (!(gap < kFairnessTolerance)) {
    throw Error(ErrorKind::kInternalInconsistency,
                "fair solution leaves an FNR exponent gap of " +
                    std::to_string(gap));
  }
}

}  // namespace

void GroupScenario::Validate() const {
  unpriv_labels.Validate();
  priv_labels.Validate();
  if (!(groups.unpriv > 0.0) || !(groups.priv > 0.0) ||
      std::abs(groups.unpriv + groups.priv - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument,
                "group priors must be positive and sum to 1");
  }
}

std::string_view RegimeName(Regime regime) {
  return regime == Regime::kUnbiased ? "unbiased" : "biased";
}

GroupOrder CheckGroupOrder(const GroupScenario& s) {
  const double c0 = ChernoffInformation(s.unpriv).c;
  const double c1 = ChernoffInformation(s.priv).c;
  return {c0, c1, c0 > c1 + kUnbiasedTolerance};
}

double FairnessGap(const GroupScenario& s, double tau0, double tau1) {
  const double e0 = ChernoffExponentFn(LgfContext(s.unpriv), tau0).value;
  const double e1 = ChernoffExponentFn(LgfContext(s.priv), tau1).value;
  return std::abs(e0 - e1);
}

double FnrMatchingThreshold(const LgfContext& ctx, double target) {
  if (!(target > 0.0)) {
    throw Error(ErrorKind::kThresholdOutOfRange,
                "target FNR exponent must be positive");
  }
  const auto derivative = [&](double u) {
    return ctx.LgfDerivative(Hypothesis::kPos, u);
  };
  if (!(derivative(0.0) > 0.0)) {
    throw Error(ErrorKind::kThresholdOutOfRange,
                "detector is not well-behaved: E[T|pos] <= 0");
  }
  if (ctx.backend() == Backend::kGrid) {
    const double tmin = ctx.grid_statistic_min();
    const double limit =
        -std::log(ctx.GridTailMass(Hypothesis::kPos, tmin, false));
    if (target > limit) {
      throw Error(ErrorKind::kThresholdOutOfRange,
                  "target FNR exponent " + std::to_string(target) +
                      " exceeds the grid maximum " + std::to_string(limit));
    }
    if (target == limit) return tmin;
  }
  // argmin of L_pos lies at negative u.
  const auto [lo, hi] = numeric::ExpandBracket(derivative, 0.0, -1.0, 1.0);
  const double u_min = numeric::FindRoot(derivative, lo, hi);

  // g(u) = u L'(u) - L(u) is the exponent of the tangent with slope L'(u);
  // it decreases on u < 0 from +inf (or a grid's limit) to g(0) = 0.
  const auto excess = [&](double u) {
    return u * ctx.LgfDerivative(Hypothesis::kPos, u) -
           ctx.Lgf(Hypothesis::kPos, u) - target;
  };
  const double at_min = excess(u_min);
  double u_a = u_min;
  if (at_min > 0.0) {
    u_a = numeric::FindRoot(excess, u_min, 0.0);
  } else if (at_min < 0.0) {
    const auto [a, b] = numeric::ExpandBracket(excess, u_min, -1.0, 1.0);
    u_a = numeric::FindRoot(excess, a, b);
  }
  return ctx.LgfDerivative(Hypothesis::kPos, u_a);
}

FairSolution SolveOptBoth(const GroupScenario& s) {
  s.Validate();
  const GroupOrder order = CheckGroupOrder(s);
  if (order.contradicts_labels) {
    throw Error(ErrorKind::kGroupOrderError,
                "C(unprivileged) = " + std::to_string(order.c_unpriv) +
                    " exceeds C(privileged) = " + std::to_string(order.c_priv));
  }
  const LgfContext ctx0(s.unpriv);
  const LgfContext ctx1(s.priv);
  FairSolution sol;
  sol.tau0 = 0.0;
  if (std::abs(order.c_unpriv - order.c_priv) < kUnbiasedTolerance) {
    sol.regime = Regime::kUnbiased;
    sol.tau1 = 0.0;
  } else {
    sol.regime = Regime::kBiased;
    sol.tau1 = FnrMatchingThreshold(ctx1, order.c_unpriv);
  }
  sol.report0 = ComputeExponentReport(ctx0, sol.tau0);
  sol.report1 = ComputeExponentReport(ctx1, sol.tau1);
  sol.objective = std::min(sol.report0.e_e, sol.report1.e_e);
  if (sol.regime == Regime::kBiased) {
    if (!(sol.tau1 > 0.0) || !(sol.report1.e_fp > order.c_priv)) {
      throw Error(ErrorKind::kInternalInconsistency,
                  "privileged threshold must be positive with E_FP above "
                  "C(privileged)");
    }
    CheckFairness(sol);
  }
  return sol;
}

FairSolution SolveOptOne(const GroupScenario& s) {
  s.Validate();
  const GroupOrder order = CheckGroupOrder(s);
  if (order.contradicts_labels) {
    throw Error(ErrorKind::kGroupOrderError,
                "C(unprivileged) = " + std::to_string(order.c_unpriv) +
                    " exceeds C(privileged) = " + std::to_string(order.c_priv));
  }
  if (std::abs(order.c_unpriv - order.c_priv) < kUnbiasedTolerance) {
    throw Error(ErrorKind::kNotBiasedScenario,
                "Chernoff informations are equal; the fairness constraint is "
                "met by both Bayes detectors");
  }
  const LgfContext ctx0(s.unpriv);
  const LgfContext ctx1(s.priv);
  FairSolution sol;
  sol.regime = Regime::kBiased;
  sol.tau1 = 0.0;
  sol.tau0 = FnrMatchingThreshold(ctx0, order.c_priv);
  sol.report0 = ComputeExponentReport(ctx0, sol.tau0);
  sol.report1 = ComputeExponentReport(ctx1, sol.tau1);
  sol.objective = sol.report0.e_e;
  if (!(sol.tau0 < 0.0) ||
      !(std::abs(sol.report0.e_fn - order.c_priv) < kFairnessTolerance) ||
      !(sol.report0.e_fp < order.c_unpriv)) {
    throw Error(ErrorKind::kInternalInconsistency,
                "unprivileged fair threshold violates tau0 < 0, "
                "E_FN = C(privileged) or E_FP < C(unprivileged)");
  }
  CheckFairness(sol);
  return sol;
}

TradeoffCurve SweepCurve(const GroupScenario& s, double lo, double hi, int n) {
  if (n < 1 || lo > hi) {
    throw Error(ErrorKind::kInvalidArgument,
                "sweep needs n >= 1 and lo <= hi");
  }
  const LgfContext ctx0(s.unpriv);
  const LgfContext ctx1(s.priv);
  TradeoffCurve curve;
  curve.reference_tau1 = 0.0;
  curve.reference_e_fn = ChernoffExponentFn(ctx1, 0.0).value;

  const double mean_neg = ctx0.StatisticMean(Hypothesis::kNeg);
  const double mean_pos = ctx0.StatisticMean(Hypothesis::kPos);
  const double margin = 1e-9 * std::max(1.0, mean_pos - mean_neg);
  if (lo <= mean_neg) {
    lo = mean_neg + margin;
    curve.range_shrunk = true;
  }
  if (hi >= mean_pos) {
    hi = mean_pos - margin;
    curve.range_shrunk = true;
  }
  if (lo > hi) {
    throw Error(ErrorKind::kThresholdOutOfRange,
                "sweep range lies outside the valid exponent interval");
  }
  if (lo == hi) n = 1;

  curve.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    double tau = n == 1 ? lo
                 : i == n - 1 ? hi
                              : lo + i * (hi - lo) / (n - 1);
    if (tau == 0.0) tau = 0.0;  // drop the sign of -0
    const ExponentReport r = ComputeExponentReport(ctx0, tau);
    curve.points.push_back({tau, r.e_fp, r.e_fn, r.e_e,
                            std::abs(r.e_fn - curve.reference_e_fn)});
  }
  return curve;
}

double OverallExponentUnequalGroups(const GroupScenario& s, double tau0,
                                    double tau1) {
  s.Validate();
  const ExponentReport r0 = ComputeExponentReport(LgfContext(s.unpriv), tau0);
  const ExponentReport r1 = ComputeExponentReport(LgfContext(s.priv), tau1);
  const double l0 = s.groups.unpriv;
  const double l1 = s.groups.priv;
  const double value = std::min(
      {r0.e_fp - std::log(4 * s.unpriv_labels.neg * l0),
       r0.e_fn - std::log(4 * s.unpriv_labels.pos * l0),
       r1.e_fp - std::log(4 * s.priv_labels.neg * l1),
       r1.e_fn - std::log(4 * s.priv_labels.pos * l1)});
  if (value < 0.0) {
    throw Error(ErrorKind::kNegativeAdjustedExponent,
                "overall exponent is " + std::to_string(value));
  }
  return value;
}

}  // namespace cfair
