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

#include "cfair/ideal.h"

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cfair/error.h"
#include "cfair/lgf.h"
#include "oracles.h"

namespace cfair {
namespace {

DistributionPair Gauss1(double m0, double m1) {
  return DistributionPair(GaussianDistribution({m0}, 1.0),
                          GaussianDistribution({m1}, 1.0));
}

DistributionPair GridOf(double m0, double m1, int n) {
  return DistributionPair(
      Discretize(GaussianDistribution({m0}, 1.0), -10, 15, n).grid,
      Discretize(GaussianDistribution({m1}, 1.0), -10, 15, n).grid);
}

GroupScenario Example() { return {Gauss1(1, 4), Gauss1(0, 4), {}, {}, {}}; }

TEST(ConstructIdeal, WorkedExample) {
  const IdealPair ip = ConstructIdeal(Example());
  EXPECT_NEAR(ip.w, -1.0 / 3, 1e-8);
  EXPECT_EQ(ip.v, 1.0);
  EXPECT_NEAR(ip.pair.neg_gaussian().mean()[0], 0.0, 1e-8);
  EXPECT_EQ(ip.pair.neg_gaussian().variance(), 1.0);
  EXPECT_NEAR(ip.pair.pos_gaussian().mean()[0], 4.0, 1e-12);
  EXPECT_NEAR(ip.c_ideal, 2.0, 1e-8);
  EXPECT_NEAR(ip.fair_tau_equiv, -1.5, 1e-8);
  // 0.5 D(N(0,1) || N(1,1)) + 0.5 D(N(4,1) || N(4,1)).
  EXPECT_NEAR(ip.kl_objective, 0.25, 1e-8);

  const IdealVerification v = VerifyIdeal(ip, Example().unpriv,
                                          Example().priv);
  EXPECT_TRUE(v.fairness_on_given);
  EXPECT_TRUE(v.accuracy_on_ideal);
  EXPECT_TRUE(v.detector_equivalent);
  EXPECT_LT(v.fairness_residual, 1e-8);
  EXPECT_LT(v.accuracy_residual, 1e-8);
  EXPECT_NEAR(v.scale, 4.0 / 3, 1e-8);
  EXPECT_NEAR(v.implied_tau, -1.5, 1e-8);

  const DecisionComparison d = CompareDecisions(ip, Example().unpriv,
                                                ip.fair_tau_equiv);
  EXPECT_EQ(d.points, 5001u);
  EXPECT_EQ(d.mismatches, 0u);
  EXPECT_LE(d.boundary_ties, 1u);
}

TEST(ConstructIdeal, DiscretizedWorkedExample) {
  const GroupScenario s{GridOf(1, 4, 2001), GridOf(0, 4, 2001), {}, {}, {}};
  const IdealPair ip = ConstructIdeal(s);
  EXPECT_NEAR(ip.w, -1.0 / 3, 1e-3);
  EXPECT_NEAR(ip.c_ideal, 2.0, 1e-4);
  const DecisionComparison d = CompareDecisions(ip, s.unpriv, ip.fair_tau_equiv);
  EXPECT_EQ(d.points, 2001u);
  EXPECT_EQ(d.mismatches, 0u);
}

TEST(ConstructIdeal, RandomGridScenarios) {
  std::mt19937_64 rng(21);
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 6;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i);
    DistributionPair a(GridDistribution(s, oracle::RandomSimplex(rng, n)),
                       GridDistribution(s, oracle::RandomSimplex(rng, n)));
    DistributionPair b(GridDistribution(s, oracle::RandomSimplex(rng, n)),
                       GridDistribution(s, oracle::RandomSimplex(rng, n)));
    const double ca = ChernoffInformation(a).c;
    const double cb = ChernoffInformation(b).c;
    if (std::abs(ca - cb) < 1e-3) continue;
    const GroupScenario sc = ca < cb ? GroupScenario{a, b, {}, {}, {}}
                                     : GroupScenario{b, a, {}, {}, {}};
    std::optional<IdealPair> built_ip;
    try {
      built_ip = ConstructIdeal(sc);
    } catch (const Error& e) {
      // The fair threshold can fall below E[T | neg] when the privileged
      // group is far more separable.
      ASSERT_EQ(e.kind(), ErrorKind::kThresholdOutOfRange);
      continue;
    }
    const IdealPair& ip = *built_ip;
    ++built;
    EXPECT_GE(ip.c_ideal, ChernoffInformation(sc.unpriv).c);
    EXPECT_LT(ip.w, 0.0);
    const DecisionComparison d = CompareDecisions(ip, sc.unpriv,
                                                  ip.fair_tau_equiv);
    EXPECT_EQ(d.mismatches, 0u) << "trial " << trial;
  }
  EXPECT_GT(built, 30);
}

TEST(ConstructIdeal, UnbiasedScenarioIsRejected) {
  const GroupScenario s{Gauss1(1, 4), Gauss1(-1, 2), {}, {}, {}};
  try {
    ConstructIdeal(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotBiasedScenario);
  }
}

TEST(VerifyIdeal, ReportsFailuresWithoutThrowing) {
  const GroupScenario s = Example();
  const IdealPair wrong{DistributionPair(Tilt(s.unpriv, -0.5), Tilt(s.unpriv, 1)),
                        -0.5, 1.0, 0.0, 0.0, -1.5};
  const IdealVerification v = VerifyIdeal(wrong, s.unpriv, s.priv);
  EXPECT_FALSE(v.fairness_on_given);
  EXPECT_FALSE(v.accuracy_on_ideal);
  EXPECT_FALSE(v.detector_equivalent);
  EXPECT_GT(v.fairness_residual, 1e-3);
}

TEST(VerifyIdeal, TrivialSelfConsistency) {
  // The observed pair is its own ideal when both groups are equally
  // separable: w = 0, v = 1, threshold 0.
  const DistributionPair p = Gauss1(1, 4);
  const IdealPair self{p, 0.0, 1.0, 1.125, 0.0, 0.0};
  const IdealVerification v = VerifyIdeal(self, p, Gauss1(-1, 2));
  EXPECT_TRUE(v.fairness_on_given);
  EXPECT_TRUE(v.accuracy_on_ideal);
  EXPECT_TRUE(v.detector_equivalent);
}

TEST(SolveKlMinimal, WorkedExample) {
  const IdealPair ip = SolveKlMinimal(Example());
  // phi(u) = 4.5 u^2 - 3u, chords of slope -1.5 are symmetric about 1/3 and
  // the objective 2.25 (w^2 + (1 - v)^2) is smallest at v = 5/6.
  EXPECT_NEAR(ip.v, 5.0 / 6, 1e-6);
  EXPECT_NEAR(ip.w, -1.0 / 6, 1e-6);
  EXPECT_NEAR(ip.kl_objective, 0.125, 1e-10);
  EXPECT_NEAR(ip.c_ideal, 1.125, 1e-8);
  EXPECT_LT(ip.kl_objective, ConstructIdeal(Example()).kl_objective);
  const IdealVerification v = VerifyIdeal(ip, Example().unpriv,
                                          Example().priv);
  EXPECT_TRUE(v.fairness_on_given);
  EXPECT_TRUE(v.detector_equivalent);
  EXPECT_EQ(CompareDecisions(ip, Example().unpriv, -1.5).mismatches, 0u);
}

TEST(SolveKlMinimal, DeterministicAndNeverWorseThanFixedV) {
  std::mt19937_64 rng(5);
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 4;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i);
    DistributionPair a(GridDistribution(s, oracle::RandomSimplex(rng, n)),
                       GridDistribution(s, oracle::RandomSimplex(rng, n)));
    DistributionPair b(GridDistribution(s, oracle::RandomSimplex(rng, n)),
                       GridDistribution(s, oracle::RandomSimplex(rng, n)));
    const double ca = ChernoffInformation(a).c;
    const double cb = ChernoffInformation(b).c;
    if (std::abs(ca - cb) < 1e-3) continue;
    const GroupScenario sc = ca < cb ? GroupScenario{a, b, {}, {}, {}}
                                     : GroupScenario{b, a, {}, {}, {}};
    const Priors priors{0.3, 0.7};
    std::optional<IdealPair> solved;
    try {
      solved = SolveKlMinimal(sc, priors);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::kThresholdOutOfRange);
      continue;
    }
    const IdealPair& first = *solved;
    ++built;
    const IdealPair second = SolveKlMinimal(sc, priors);
    EXPECT_EQ(first.kl_objective, second.kl_objective);
    EXPECT_LE(first.kl_objective,
              ConstructIdeal(sc, priors).kl_objective + 1e-12);
    EXPECT_EQ(CompareDecisions(first, sc.unpriv, first.fair_tau_equiv)
                  .mismatches,
              0u);
  }
  EXPECT_GT(built, 10);
}

}  // namespace
}  // namespace cfair
