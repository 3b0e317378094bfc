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

// Log-generating functions of a likelihood-ratio statistic and their
// Legendre-Fenchel transforms (Chernoff exponents).
//
// The statistic is always T(x) = log pos(x) / neg(x) of a *base* pair. The
// expectation defining the log-generating function is taken under an
// *evaluation* pair, which defaults to the base pair. Evaluating under a
// different pair gives the mismatched exponents used to check ideal
// distributions against the data actually observed.
//
//   L_h(u) = log E[exp(u T(X)) | X ~ eval_h],   h in {neg, pos}
//   E_FP(tau) = sup_{u > 0} (u tau - L_neg(u))
//   E_FN(tau) = sup_{u < 0} (u tau - L_pos(u))
//
// Both suprema are found by solving L_h'(u) = tau, which has a unique root
// because L_h is strictly convex.

#ifndef CFAIR_LGF_H_
#define CFAIR_LGF_H_

#include <span>
#include <vector>

#include "cfair/dist.h"

namespace cfair {

enum class Hypothesis { kNeg = 0, kPos = 1 };

class LgfContext {
 public:
  // Statistic and expectation from the same pair.
  explicit LgfContext(const DistributionPair& pair);
  // Statistic from `base`, expectation under `eval`. Throws
  // kBackendMismatch / kSupportMismatch when they are incompatible.
  LgfContext(const DistributionPair& base, const DistributionPair& eval);

  Backend backend() const { return backend_; }
  bool matched() const { return matched_; }

  double Lgf(Hypothesis h, double u) const;
  double LgfDerivative(Hypothesis h, double u) const;
  // E[T(X) | h] under the evaluation pair, i.e. L_h'(0).
  double StatisticMean(Hypothesis h) const { return LgfDerivative(h, 0.0); }

  // Variance of T under either hypothesis (gaussian backend).
  double StatisticVariance() const { return stat_variance_; }

  // T at grid index i (grid backend).
  double Statistic(std::size_t i) const { return grid_statistic_[i]; }
  // T at a point (gaussian backend): slope . x + intercept.
  double Statistic(std::span<const double> x) const;

  const std::vector<double>& grid_statistic() const { return grid_statistic_; }
  const std::vector<double>& slope() const { return slope_; }
  double intercept() const { return intercept_; }

  // Evaluation-pair probability of {T >= tau} (neg) or {T <= tau} (pos);
  // the limiting value of the exponents at the edge of a grid's range.
  double GridTailMass(Hypothesis h, double tau, bool upper) const;

  // Extremes of T over a grid support.
  double grid_statistic_min() const { return stat_min_; }
  double grid_statistic_max() const { return stat_max_; }

 private:
  Backend backend_;
  bool matched_ = false;

  // Grid backend.
  std::vector<double> grid_statistic_;
  std::vector<double> eval_log_mass_[2];
  double stat_min_ = 0.0;
  double stat_max_ = 0.0;

  // Gaussian backend: T(x) = slope . x + intercept, and under eval_h the
  // statistic is N(stat_mean_[h], stat_variance_).
  std::vector<double> slope_;
  double intercept_ = 0.0;
  double stat_mean_[2] = {0.0, 0.0};
  double stat_variance_ = 0.0;
  // ||mu1 - mu0||^2 / sigma^2 of the base pair, used by the matched closed
  // form L_neg(u) = k/2 u(u-1), L_pos(u) = k/2 u(u+1).
  double separation_ = 0.0;
};

struct Exponent {
  double value;
  // Attaining tilt; +/-infinity when the supremum is approached only in the
  // limit (threshold at the edge of a finite grid's statistic range).
  double u_star;
};

// Throws kThresholdOutOfRange when tau <= E[T | neg].
Exponent ChernoffExponentFp(const LgfContext& ctx, double tau);
// Throws kThresholdOutOfRange when tau >= E[T | pos].
Exponent ChernoffExponentFn(const LgfContext& ctx, double tau);

struct ExponentReport {
  double tau;
  double e_fp;
  double e_fn;
  double e_e;  // min(e_fp, e_fn)
  double u_fp;
  double u_fn;
};

ExponentReport ComputeExponentReport(const LgfContext& ctx, double tau);

struct ChernoffInfo {
  double c;
  double u_star;  // in (0, 1)
};

// C(neg, pos) = -min_{u in (0,1)} log sum neg^(1-u) pos^u.
ChernoffInfo ChernoffInformation(const DistributionPair& pair);

}  // namespace cfair

#endif  // CFAIR_LGF_H_
