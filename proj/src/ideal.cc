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
#include <limits>
#include <string>

#include "cfair/error.h"
#include "cfair/lgf.h"
#include "cfair/numeric.h"

namespace cfair {
namespace {

constexpr double kVerifyTolerance = 1e-8;
constexpr double kTieBand = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

IdealPair MakeIdeal(const DistributionPair& observed, double w, double v,
                    double fair_tau, const Priors& kl_priors) {
  DistributionPair pair(Tilt(observed, w), Tilt(observed, v));
  const double kl = kl_priors.neg * KlDivergence(pair.neg(), observed.neg()) +
                    kl_priors.pos * KlDivergence(pair.pos(), observed.pos());
  const double c = ChernoffInformation(pair).c;
  return IdealPair{std::move(pair), w, v, c, kl, fair_tau};
}

// Threshold on the observed statistic at which the observed LR detector is
// fair against the privileged Bayes detector.
double ReferenceThreshold(const DistributionPair& original,
                          const DistributionPair& priv) {
  const double c_orig = ChernoffInformation(original).c;
  const double c_priv = ChernoffInformation(priv).c;
  if (std::abs(c_orig - c_priv) < kUnbiasedTolerance) return 0.0;
  return FnrMatchingThreshold(LgfContext(original), c_priv);
}

struct AffineFit {
  double scale;
  double offset;
  double residual;
};

// ideal = scale * observed + offset.
AffineFit FitStatistics(const LgfContext& ideal, const LgfContext& observed) {
  if (ideal.backend() == Backend::kGaussian) {
    const auto& a = ideal.slope();
    const auto& b = observed.slope();
    double dot = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      dot += a[i] * b[i];
      norm += b[i] * b[i];
    }
    const double scale = dot / norm;
    double residual = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      residual = std::max(residual, std::abs(a[i] - scale * b[i]));
    }
    return {scale, ideal.intercept() - scale * observed.intercept(), residual};
  }
  const auto& y = ideal.grid_statistic();
  const auto& x = observed.grid_statistic();
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double scale = sxx > 0.0 ? sxy / sxx : 0.0;
  const double offset = my - scale * mx;
  double residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    residual = std::max(residual, std::abs(y[i] - (scale * x[i] + offset)));
  }
  return {scale, offset, residual};
}

}  // namespace

IdealPair ConstructIdeal(const GroupScenario& s, const Priors& kl_priors) {
  kl_priors.Validate();
  const FairSolution fair = SolveOptOne(s);
  const double tau = fair.tau0;
  const LgfContext ctx(s.unpriv);

  // L_neg(w) + tau (1 - w): equals tau < 0 at w = 0 and grows without bound
  // as w -> -inf.
  const auto chord = [&](double w) {
    return ctx.Lgf(Hypothesis::kNeg, w) + tau * (1.0 - w);
  };
  const auto [lo, hi] = numeric::ExpandBracket(chord, 0.0, -1.0, 1.0);
  const double w = numeric::FindRoot(chord, lo, hi);

  IdealPair ip = MakeIdeal(s.unpriv, w, 1.0, tau, kl_priors);
  const IdealVerification check = VerifyIdeal(ip, s.unpriv, s.priv);
  if (!check.fairness_on_given || !check.accuracy_on_ideal ||
      !check.detector_equivalent) {
    throw Error(ErrorKind::kInternalInconsistency,
                "constructed ideal pair fails verification (fairness residual " +
                    std::to_string(check.fairness_residual) +
                    ", accuracy residual " +
                    std::to_string(check.accuracy_residual) + ")");
  }
  return ip;
}

IdealVerification VerifyIdeal(const IdealPair& ip,
                              const DistributionPair& original,
                              const DistributionPair& priv) {
  IdealVerification out{false, kInf, false, kInf, false, 0.0, 0.0, 0.0, kInf};
  double c_priv = 0.0;
  try {
    c_priv = ChernoffInformation(priv).c;
  } catch (const Error&) {
    return out;
  }

  try {
    const LgfContext mismatched(ip.pair, original);
    const double e_fn = ChernoffExponentFn(mismatched, 0.0).value;
    out.fairness_residual = std::abs(e_fn - c_priv);
    out.fairness_on_given = out.fairness_residual < kVerifyTolerance;
  } catch (const Error&) {
  }

  try {
    out.accuracy_residual =
        std::abs(ChernoffInformation(ip.pair).c - c_priv);
    out.accuracy_on_ideal = out.accuracy_residual < kVerifyTolerance;
  } catch (const Error&) {
  }

  try {
    const AffineFit fit =
        FitStatistics(LgfContext(ip.pair), LgfContext(original));
    out.scale = fit.scale;
    out.affine_residual = fit.residual;
    out.reference_tau = ReferenceThreshold(original, priv);
    if (fit.scale > 0.0) {
      out.implied_tau = -fit.offset / fit.scale;
      out.detector_equivalent =
          fit.residual < kVerifyTolerance * std::max(1.0, fit.scale) &&
          std::abs(out.implied_tau - out.reference_tau) < kVerifyTolerance;
    }
  } catch (const Error&) {
  }
  return out;
}

DecisionComparison CompareDecisions(const IdealPair& ip,
                                    const DistributionPair& original,
                                    double tau, double lo, double hi, int n) {
  const LgfContext ideal(ip.pair);
  const LgfContext observed(original);
  DecisionComparison out{0, 0, 0};
  const auto compare = [&](double t_ideal, double t_observed) {
    ++out.points;
    if (std::abs(t_ideal) < kTieBand || std::abs(t_observed - tau) < kTieBand) {
      ++out.boundary_ties;
      return;
    }
    if ((t_ideal >= 0.0) != (t_observed >= tau)) ++out.mismatches;
  };

  if (observed.backend() == Backend::kGrid) {
    RequireCompatible(ip.pair.neg(), original.neg());
    for (std::size_t i = 0; i < observed.grid_statistic().size(); ++i) {
      compare(ideal.Statistic(i), observed.Statistic(i));
    }
    return out;
  }
  if (n < 2 || !(lo < hi)) {
    throw Error(ErrorKind::kInvalidArgument,
                "decision comparison needs n >= 2 and lo < hi");
  }
  const auto& slope = observed.slope();
  double norm = 0.0;
  for (double a : slope) norm += a * a;
  norm = std::sqrt(norm);
  std::vector<double> x(slope.size());
  for (int i = 0; i < n; ++i) {
    const double t = lo + i * (hi - lo) / (n - 1);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = t * slope[j] / norm;
    compare(ideal.Statistic(x), observed.Statistic(x));
  }
  return out;
}

IdealPair SolveKlMinimal(const GroupScenario& s, const Priors& kl_priors) {
  kl_priors.Validate();
  const FairSolution fair = SolveOptOne(s);
  const double tau = fair.tau0;
  const LgfContext ctx(s.unpriv);

  // Tangent point of slope tau; every feasible chord straddles it.
  const auto slope_gap = [&](double u) {
    return ctx.LgfDerivative(Hypothesis::kNeg, u) - tau;
  };
  const double u_a = numeric::FindRoot(slope_gap, 0.0, 1.0);

  // phi(u) = L(u) - tau u is convex with minimum at u_a; a chord of slope
  // tau joins w < u_a < v with phi(w) = phi(v).
  const auto phi = [&](double u) {
    return ctx.Lgf(Hypothesis::kNeg, u) - tau * u;
  };
  const auto partner = [&](double v) {
    const double level = phi(v);
    const auto gap = [&](double w) { return phi(w) - level; };
    const auto [lo, hi] = numeric::ExpandBracket(gap, u_a, -1.0, 1.0);
    return numeric::FindRoot(gap, lo, hi);
  };
  // D(tilt_t || P0) = t L'(t) - L(t) and D(tilt_t || P1) = (t - 1) L'(t) -
  // L(t), with L = L_neg of the observed pair.
  const auto divergence = [&](double t, double shift) {
    return (t - shift) * ctx.LgfDerivative(Hypothesis::kNeg, t) -
           ctx.Lgf(Hypothesis::kNeg, t);
  };
  const auto objective = [&](double v) {
    const double w = partner(v);
    return kl_priors.neg * divergence(w, 0.0) +
           kl_priors.pos * divergence(v, 1.0);
  };

  const double lo = u_a + 1e-6 * (1.0 - u_a);
  double hi = 2.0;
  numeric::Minimum best = numeric::MinimizeUnimodal(objective, lo, hi);
  while (hi - best.arg < 1e-6 * hi && hi < numeric::kBracketCap) {
    hi *= 2;
    best = numeric::MinimizeUnimodal(objective, lo, hi);
  }
  // The v = 1 construction is always feasible; never return worse than it.
  double v = best.arg;
  if (objective(1.0) < best.value) v = 1.0;

  IdealPair ip = MakeIdeal(s.unpriv, partner(v), v, tau, kl_priors);
  const IdealVerification check = VerifyIdeal(ip, s.unpriv, s.priv);
  if (!check.fairness_on_given) {
    throw Error(ErrorKind::kInternalInconsistency,
                "KL-minimal ideal pair violates the FNR constraint by " +
                    std::to_string(check.fairness_residual));
  }
  return ip;
}

}  // namespace cfair
