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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cfair/error.h"
#include "oracles.h"

namespace cfair {
namespace {

DistributionPair Gauss1(double m0, double m1) {
  return DistributionPair(GaussianDistribution({m0}, 1.0),
                          GaussianDistribution({m1}, 1.0));
}

DistributionPair Grid5001(double m0, double m1) {
  return DistributionPair(
      Discretize(GaussianDistribution({m0}, 1.0), -10, 15, 5001).grid,
      Discretize(GaussianDistribution({m1}, 1.0), -10, 15, 5001).grid);
}

GroupScenario Example() { return {Gauss1(1, 4), Gauss1(0, 4), {}, {}, {}}; }

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected cfair::Error";
  return ErrorKind::kInternalInconsistency;
}

TEST(SolveOptBoth, WorkedExample) {
  const FairSolution sol = SolveOptBoth(Example());
  EXPECT_EQ(sol.regime, Regime::kBiased);
  EXPECT_EQ(sol.tau0, 0.0);
  EXPECT_NEAR(sol.objective, 1.125, 1e-8);
  // g(u) = 8u^2 = 9/8 at u = -3/8, tau1 = L1'(-3/8) = 16(-3/8) + 8 = 2.
  EXPECT_NEAR(sol.tau1, 2.0, 1e-8);
  EXPECT_NEAR(sol.report1.e_fp, oracle::GaussEfp(16, 2.0), 1e-8);
  EXPECT_NEAR(sol.report1.e_fp, 3.125, 1e-8);
  EXPECT_NEAR(sol.report1.e_fn, 1.125, 1e-8);
  EXPECT_LT(sol.report1.e_e, 2.0);
}

TEST(SolveOptOne, WorkedExample) {
  const FairSolution sol = SolveOptOne(Example());
  EXPECT_NEAR(sol.tau0, -1.5, 1e-8);
  EXPECT_EQ(sol.tau1, 0.0);
  EXPECT_NEAR(sol.report0.e_fn, 2.0, 1e-8);
  EXPECT_NEAR(sol.report0.e_fp, 0.5, 1e-8);
  EXPECT_NEAR(sol.report0.e_e, 0.5, 1e-8);
  EXPECT_NEAR(sol.objective, 0.5, 1e-8);
}

TEST(SolveOptOne, WorkedExampleGrid) {
  const GroupScenario s{Grid5001(1, 4), Grid5001(0, 4), {}, {}, {}};
  const FairSolution sol = SolveOptOne(s);
  EXPECT_NEAR(sol.tau0, -1.5, 1e-3);
  EXPECT_NEAR(sol.report0.e_fp, 0.5, 1e-4);
}

TEST(Solvers, UnbiasedScenario) {
  const GroupScenario s{Gauss1(1, 4), Gauss1(-1, 2), {}, {}, {}};
  const FairSolution sol = SolveOptBoth(s);
  EXPECT_EQ(sol.regime, Regime::kUnbiased);
  EXPECT_EQ(sol.tau0, 0.0);
  EXPECT_EQ(sol.tau1, 0.0);
  EXPECT_NEAR(sol.objective, 1.125, 1e-10);
  EXPECT_NEAR(FairnessGap(s, sol.tau0, sol.tau1), 0.0, 1e-12);
  EXPECT_EQ(KindOf([&] { SolveOptOne(s); }), ErrorKind::kNotBiasedScenario);
}

TEST(Solvers, GroupOrderError) {
  const GroupScenario s{Gauss1(0, 4), Gauss1(1, 4), {}, {}, {}};
  EXPECT_TRUE(CheckGroupOrder(s).contradicts_labels);
  EXPECT_EQ(KindOf([&] { SolveOptBoth(s); }), ErrorKind::kGroupOrderError);
  EXPECT_EQ(KindOf([&] { SolveOptOne(s); }), ErrorKind::kGroupOrderError);
}

TEST(FnrMatchingThreshold, ClosedForm) {
  // E_FN(tau) = (tau - k/2)^2 / (2k) = target with tau < k/2.
  const LgfContext ctx(Gauss1(1, 4));
  for (double target : {0.1, 1.125, 2.0, 7.0}) {
    EXPECT_NEAR(FnrMatchingThreshold(ctx, target),
                4.5 - std::sqrt(18 * target), 1e-9);
  }
  EXPECT_THROW(FnrMatchingThreshold(ctx, 0.0), Error);
}

TEST(SweepCurve, WorkedExampleEndpoints) {
  const TradeoffCurve c = SweepCurve(Example(), -1.5, 0.0, 151);
  ASSERT_EQ(c.points.size(), 151u);
  EXPECT_FALSE(c.range_shrunk);
  EXPECT_EQ(c.points.front().tau0, -1.5);
  EXPECT_EQ(c.points.back().tau0, 0.0);
  EXPECT_FALSE(std::signbit(c.points.back().tau0));
  EXPECT_NEAR(c.points.front().e_fn, 2.0, 1e-10);
  EXPECT_NEAR(c.points.front().e_e, 0.5, 1e-10);
  EXPECT_NEAR(c.points.front().fairness_gap, 0.0, 1e-10);
  EXPECT_NEAR(c.points.back().e_e, 1.125, 1e-10);
  EXPECT_NEAR(c.points.back().fairness_gap, 0.875, 1e-10);
  EXPECT_NEAR(c.reference_e_fn, 2.0, 1e-10);
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    EXPECT_GT(c.points[i].tau0, c.points[i - 1].tau0);
    EXPECT_GE(c.points[i].e_e, c.points[i - 1].e_e);
  }
}

TEST(SweepCurve, ClipsOutOfRangeAndSinglePoint) {
  const TradeoffCurve c = SweepCurve(Example(), -10.0, 10.0, 11);
  EXPECT_TRUE(c.range_shrunk);
  EXPECT_GT(c.points.front().tau0, -4.5);
  EXPECT_LT(c.points.back().tau0, 4.5);
  const TradeoffCurve one = SweepCurve(Example(), -1.0, -1.0, 5);
  ASSERT_EQ(one.points.size(), 1u);
  EXPECT_NEAR(one.points[0].e_fp, oracle::GaussEfp(9, -1.0), 1e-10);
  EXPECT_THROW(SweepCurve(Example(), 1.0, 0.0, 5), Error);
  EXPECT_THROW(SweepCurve(Example(), 20.0, 30.0, 5), Error);
}

TEST(SweepCurve, ReproducesOptOneReports) {
  const FairSolution sol = SolveOptOne(Example());
  const TradeoffCurve c = SweepCurve(Example(), sol.tau0, sol.tau0, 1);
  EXPECT_NEAR(c.points[0].e_fp, sol.report0.e_fp, 1e-8);
  EXPECT_NEAR(c.points[0].e_fn, sol.report0.e_fn, 1e-8);
  EXPECT_NEAR(c.points[0].e_e, sol.report0.e_e, 1e-8);
}

TEST(OverallExponent, EqualPriorsIsMinimumOfExponents) {
  const GroupScenario s = Example();
  EXPECT_NEAR(OverallExponentUnequalGroups(s, 0.0, 0.0), 1.125, 1e-10);
  EXPECT_NEAR(OverallExponentUnequalGroups(s, -1.5, 0.0), 0.5, 1e-10);
}

TEST(OverallExponent, UnequalPriorsOffsets) {
  GroupScenario s = Example();
  s.groups = {0.3, 0.7};
  s.unpriv_labels = {0.6, 0.4};
  s.priv_labels = {0.5, 0.5};
  const double want =
      std::min({oracle::GaussEfp(9, 0.5) - std::log(4 * 0.6 * 0.3),
                oracle::GaussEfn(9, 0.5) - std::log(4 * 0.4 * 0.3),
                oracle::GaussEfp(16, 0.0) - std::log(4 * 0.5 * 0.7),
                oracle::GaussEfn(16, 0.0) - std::log(4 * 0.5 * 0.7)});
  EXPECT_NEAR(OverallExponentUnequalGroups(s, 0.5, 0.0), want, 1e-10);
}

TEST(OverallExponent, NegativeIsReported) {
  GroupScenario s{Gauss1(0, 0.5), Gauss1(0, 0.6), {}, {}, {0.5, 0.5}};
  s.unpriv_labels = {0.9, 0.1};
  s.priv_labels = {0.9, 0.1};
  EXPECT_EQ(KindOf([&] { OverallExponentUnequalGroups(s, 0.0, 0.0); }),
            ErrorKind::kNegativeAdjustedExponent);
}

TEST(GroupScenario, ValidatesGroupPriors) {
  GroupScenario s = Example();
  s.groups = {0.3, 0.3};
  EXPECT_THROW(s.Validate(), Error);
}

}  // namespace
}  // namespace cfair
