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


// End-to-end acceptance checks on the two-group gaussian example
// (unprivileged N(1,1) vs N(4,1), privileged N(0,1) vs N(4,1)). Prints one
// PASS/FAIL line per criterion and exits nonzero if any fails.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfair/active.h"
#include "cfair/commands.h"
#include "cfair/detect.h"
#include "cfair/error.h"
#include "cfair/ideal.h"
#include "cfair/lgf.h"
#include "cfair/tradeoff.h"
#include "oracles.h"
#include "test_paths.h"

namespace cfair {
namespace {

class Criterion {
 public:
  explicit Criterion(int id) : id_(id) {}

  void Near(const std::string& what, double got, double want, double tol) {
    const bool ok = std::abs(got - want) <= tol;
    Note(ok, what + " = " + Fmt(got) + " (want " + Fmt(want) + " +- " +
                 Fmt(tol) + ")");
  }

  void True(const std::string& what, bool ok) { Note(ok, what); }

  bool Report(const std::string& title) const {
    std::cout << (failures_.empty() ? "PASS" : "FAIL") << " criterion " << id_
              << ": " << title << '\n';
    for (const std::string& f : failures_) std::cout << "    " << f << '\n';
    return failures_.empty();
  }

 private:
  static std::string Fmt(double v) {
    std::ostringstream s;
    s.precision(15);
    s << v;
    return s.str();
  }

  void Note(bool ok, const std::string& what) {
    if (!ok) failures_.push_back("failed: " + what);
  }

  int id_;
  std::vector<std::string> failures_;
};

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

bool ChernoffInformations() {
  Criterion c(1);
  c.Near("C(N(1,1), N(4,1)) gaussian", ChernoffInformation(Gauss1(1, 4)).c,
         1.125, 1e-8);
  c.Near("C(N(0,1), N(4,1)) gaussian", ChernoffInformation(Gauss1(0, 4)).c,
         2.0, 1e-8);
  c.Near("C(N(1,1), N(4,1)) grid", ChernoffInformation(Grid5001(1, 4)).c,
         1.125, 1e-4);
  c.Near("C(N(0,1), N(4,1)) grid", ChernoffInformation(Grid5001(0, 4)).c,
         2.0, 1e-4);
  return c.Report("Chernoff informations 9/8 and 2");
}

bool FairDetectorOne() {
  Criterion c(2);
  const FairSolution sol = SolveOptOne(Example());
  c.Near("tau0*", sol.tau0, -1.5, 1e-8);
  c.Near("E_FN", sol.report0.e_fn, 2.0, 1e-8);
  c.Near("E_FP", sol.report0.e_fp, 0.5, 1e-8);
  c.Near("e_e", sol.report0.e_e, 0.5, 1e-8);
  return c.Report("fair detector moving only the unprivileged threshold");
}

bool FairDetectorBoth() {
  Criterion c(3);
  const FairSolution sol = SolveOptBoth(Example());
  c.Near("objective", sol.objective, 1.125, 1e-8);
  c.True("tau1* > 0", sol.tau1 > 0);
  c.True("E_FP,T1(tau1*) > 2", sol.report1.e_fp > 2);
  return c.Report("fair detector moving both thresholds");
}

bool IdealConstruction() {
  Criterion c(4);
  const GroupScenario s = Example();
  const IdealPair ip = ConstructIdeal(s);
  c.Near("w", ip.w, -1.0 / 3, 1e-8);
  const GaussianDistribution& neg = ip.pair.neg_gaussian();
  const GaussianDistribution& pos = ip.pair.pos_gaussian();
  c.Near("ideal neg mean", neg.mean()[0], 0.0, 1e-8);
  c.Near("ideal neg variance", neg.variance(), 1.0, 0.0);
  c.Near("C(ideal)", ChernoffInformation(ip.pair).c, 2.0, 1e-8);

  // Ideal Bayes detector vs the tau0* = -1.5 detector on the observed
  // statistic 3x - 7.5, compared point by point.
  const double m0 = neg.mean()[0];
  const double m1 = pos.mean()[0];
  int mismatches = 0;
  for (int i = 0; i < 5001; ++i) {
    const double x = -10.0 + 25.0 * i / 5000;
    const bool ideal_accept = (m1 - m0) * (x - 0.5 * (m0 + m1)) >= 0;
    const bool fair_accept = 3 * x - 7.5 >= -1.5;
    if (ideal_accept != fair_accept) ++mismatches;
  }
  c.Near("decision mismatches on 5001 points", mismatches, 0, 0);
  const DecisionComparison d = CompareDecisions(ip, s.unpriv, -1.5);
  c.Near("library decision mismatches", static_cast<double>(d.mismatches), 0, 0);
  return c.Report("ideal distributions");
}

bool ActiveCollection() {
  Criterion c(5);
  const JointPair jp = JointPair::Gaussian({1.0, 1.0}, {4.0, 2.0}, 1, 1.0);
  c.Near("C(joint)", ComputeSeparabilityGain(jp).c_joint, 1.25, 1e-8);
  const LgfContext ctx(jp.joint());
  const double tau = FnrMatchingThreshold(ctx, 2.0);
  c.Near("fair threshold", tau, 5 - std::sqrt(40.0), 1e-8);
  c.Near("fair-point e_e", ComputeExponentReport(ctx, tau).e_e,
         7 - std::sqrt(40.0), 1e-8);
  c.True("conditional MI > 0", ConditionalMi(jp) > 0);
  return c.Report("extra feature for the unprivileged group");
}

bool GoldenCurve() {
  Criterion c(6);
  const auto dir = testdata::ScratchDir();
  std::vector<std::string> runs;
  for (const char* name : {"a.csv", "b.csv"}) {
    CommandOptions o;
    o.command = Command::kTradeoff;
    o.scenario_path = testdata::ExamplePath();
    o.out = (dir / name).string();
    std::ostringstream out, err;
    const int code = RunCommand(o, out, err);
    c.True(std::string("tradeoff exit code 0: ") + err.str(), code == 0);
    runs.push_back(testdata::ReadFile(dir / name));
  }
  c.True("two runs byte-identical", runs[0] == runs[1]);
  c.True("matches tests/golden/example_tradeoff.csv",
         runs[0] == testdata::ReadFile(
                        testdata::GoldenPath("example_tradeoff.csv")));
  const TradeoffCurve curve = SweepCurve(Example(), -1.5, 0.0, 151);
  c.True("151 points", curve.points.size() == 151);
  if (curve.points.size() == 151) {
    const CurvePoint& first = curve.points.front();
    const CurvePoint& last = curve.points.back();
    c.Near("tau0 = -1.5: e_fp", first.e_fp, 0.5, 1e-8);
    c.Near("tau0 = -1.5: e_fn", first.e_fn, 2.0, 1e-8);
    c.Near("tau0 = -1.5: gap", first.fairness_gap, 0.0, 1e-8);
    c.Near("tau0 = 0: e_e", last.e_e, 1.125, 1e-8);
    c.Near("tau0 = 0: gap", last.fairness_gap, 0.875, 1e-8);
  }
  return c.Report("trade-off curve golden file");
}

bool PropertySuites() {
  Criterion c(7);
  const std::string cmd = std::string("\"") + CFAIR_PROPERTY_TEST_BINARY +
                          "\" --gtest_brief=1 > /dev/null";
  c.True("property suites pass (" + cmd + ")", std::system(cmd.c_str()) == 0);
  return c.Report("property suites, 250 randomized cases each");
}

bool UnequalPriors() {
  Criterion c(8);
  c.True("bayes_threshold(0.75, 0.25) == ln 3",
         BayesThreshold({0.75, 0.25}) == std::log(3.0));
  const LgfContext ctx(Gauss1(1, 4));
  const Priors priors{0.75, 0.25};
  double best = -INFINITY;
  double best_tau = NAN;
  for (int i = 0; i <= 6000; ++i) {
    const double tau = -3.0 + i * 1e-3;
    try {
      const double v = PriorAdjustedExponent(ctx, tau, priors);
      if (v > best) {
        best = v;
        best_tau = tau;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNegativeAdjustedExponent) throw;
    }
  }
  c.Near("argmax tau of prior-adjusted exponent", best_tau, std::log(3.0),
         1e-3);
  return c.Report("unequal priors");
}

bool MonteCarlo() {
  Criterion c(9);
  const std::uint64_t n = 1000000;
  for (const auto& [name, pair] :
       {std::pair{"unprivileged", Gauss1(1, 4)},
        std::pair{"privileged", Gauss1(0, 4)}}) {
    const Detector det{pair, 0.0};
    const LgfContext ctx(pair);
    const ErrorRates mc = MonteCarloRates(det, pair, n, 42);
    const double bound_fp = std::exp(-ChernoffExponentFp(ctx, 0.0).value);
    const double bound_fn = std::exp(-ChernoffExponentFn(ctx, 0.0).value);
    // Accept when x >= (m0 + m1) / 2.
    const double m0 = pair.neg_gaussian().mean()[0];
    const double m1 = pair.pos_gaussian().mean()[0];
    const double cut = 0.5 * (m0 + m1);
    const double exact_fp = oracle::NormalUpperTail(m0, 1, cut);
    const double exact_fn = 1 - oracle::NormalUpperTail(m1, 1, cut);
    const std::string g = name;
    c.True(g + " p_fp estimate below bound", mc.p_fp <= bound_fp);
    c.True(g + " p_fn estimate below bound", mc.p_fn <= bound_fn);
    c.Near(g + " p_fp vs closed form", mc.p_fp, exact_fp, 3 * mc.ci_fp);
    c.Near(g + " p_fn vs closed form", mc.p_fn, exact_fn, 3 * mc.ci_fn);
  }
  return c.Report("Monte Carlo rates at n = 1e6, seed 42");
}

int Main() {
  const std::vector<std::function<bool()>> criteria = {
      ChernoffInformations, FairDetectorOne, FairDetectorBoth,
      IdealConstruction,    ActiveCollection, GoldenCurve,
      PropertySuites,       UnequalPriors,   MonteCarlo};
  int failed = 0;
  for (const auto& criterion : criteria) {
    try {
      if (!criterion()) ++failed;
    } catch (const std::exception& e) {
      std::cout << "FAIL (exception: " << e.what() << ")\n";
      ++failed;
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace cfair

int main() { return cfair::Main(); }
