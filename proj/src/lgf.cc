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

#include "cfair/lgf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cfair/error.h"
#include "cfair/numeric.h"

namespace cfair {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int Index(Hypothesis h) { return static_cast<int>(h); }

bool SamePair(const DistributionPair& a, const DistributionPair& b) {
  if (a.backend() != b.backend()) return false;
  if (a.backend() == Backend::kGrid) {
    return a.neg_grid().SameSupport(b.neg_grid()) &&
           a.neg_grid().mass() == b.neg_grid().mass() &&
           a.pos_grid().mass() == b.pos_grid().mass();
  }
  return a.neg_gaussian().mean() == b.neg_gaussian().mean() &&
         a.pos_gaussian().mean() == b.pos_gaussian().mean() &&
         a.neg_gaussian().variance() == b.neg_gaussian().variance();
}

std::string Fmt(double v) { return std::to_string(v); }

}  // namespace

LgfContext::LgfContext(const DistributionPair& pair)
    : LgfContext(pair, pair) {}

LgfContext::LgfContext(const DistributionPair& base,
                       const DistributionPair& eval)
    : backend_(base.backend()) {
  RequireCompatible(base.neg(), eval.neg());
  matched_ = SamePair(base, eval);

  if (backend_ == Backend::kGrid) {
    const auto& neg = base.neg_grid();
    const auto& pos = base.pos_grid();
    grid_statistic_.resize(neg.size());
    for (std::size_t i = 0; i < neg.size(); ++i) {
      grid_statistic_[i] = pos.log_mass()[i] - neg.log_mass()[i];
    }
    const auto [lo, hi] =
        std::minmax_element(grid_statistic_.begin(), grid_statistic_.end());
    stat_min_ = *lo;
    stat_max_ = *hi;
    eval_log_mass_[0] = eval.neg_grid().log_mass();
    eval_log_mass_[1] = eval.pos_grid().log_mass();
    return;
  }

  const auto& neg = base.neg_gaussian();
  const auto& pos = base.pos_gaussian();
  const double var = neg.variance();
  const std::size_t dim = neg.dimension();
  slope_.resize(dim);
  double sq_pos = 0.0;
  double sq_neg = 0.0;
  separation_ = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double diff = pos.mean()[i] - neg.mean()[i];
    slope_[i] = diff / var;
    separation_ += diff * diff;
    sq_pos += pos.mean()[i] * pos.mean()[i];
    sq_neg += neg.mean()[i] * neg.mean()[i];
  }
  separation_ /= var;
  intercept_ = -(sq_pos - sq_neg) / (2 * var);

  const auto& eval_neg = eval.neg_gaussian();
  const auto& eval_pos = eval.pos_gaussian();
  stat_mean_[0] = Statistic(eval_neg.mean());
  stat_mean_[1] = Statistic(eval_pos.mean());
  double slope_sq = 0.0;
  for (double s : slope_) slope_sq += s * s;
  stat_variance_ = eval_neg.variance() * slope_sq;
}

double LgfContext::Statistic(std::span<const double> x) const {
  double t = intercept_;
  for (std::size_t i = 0; i < slope_.size(); ++i) t += slope_[i] * x[i];
  return t;
}

double LgfContext::Lgf(Hypothesis h, double u) const {
  if (backend_ == Backend::kGaussian) {
    if (matched_) {
      const double shift = h == Hypothesis::kNeg ? -1.0 : 1.0;
      return 0.5 * separation_ * u * (u + shift);
    }
    return u * stat_mean_[Index(h)] + 0.5 * u * u * stat_variance_;
  }
  if (u == 0.0) return 0.0;
  const auto& log_mass = eval_log_mass_[Index(h)];
  double peak = -kInf;
  for (std::size_t i = 0; i < log_mass.size(); ++i) {
    peak = std::max(peak, log_mass[i] + u * grid_statistic_[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < log_mass.size(); ++i) {
    sum += std::exp(log_mass[i] + u * grid_statistic_[i] - peak);
  }
  return peak + std::log(sum);
}

double LgfContext::LgfDerivative(Hypothesis h, double u) const {
  if (backend_ == Backend::kGaussian) {
    if (matched_) {
      const double shift = h == Hypothesis::kNeg ? -0.5 : 0.5;
      return separation_ * (u + shift);
    }
    return stat_mean_[Index(h)] + u * stat_variance_;
  }
  // Mean of T under the tilted weights eval_h(x) exp(u T(x)).
  const auto& log_mass = eval_log_mass_[Index(h)];
  double peak = -kInf;
  for (std::size_t i = 0; i < log_mass.size(); ++i) {
    peak = std::max(peak, log_mass[i] + u * grid_statistic_[i]);
  }
  double sum = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < log_mass.size(); ++i) {
    const double w = std::exp(log_mass[i] + u * grid_statistic_[i] - peak);
    sum += w;
    weighted += w * grid_statistic_[i];
  }
  return weighted / sum;
}

double LgfContext::GridTailMass(Hypothesis h, double tau, bool upper) const {
  const auto& log_mass = eval_log_mass_[Index(h)];
  double mass = 0.0;
  for (std::size_t i = 0; i < log_mass.size(); ++i) {
    const bool in_tail =
        upper ? grid_statistic_[i] >= tau : grid_statistic_[i] <= tau;
    if (in_tail) mass += std::exp(log_mass[i]);
  }
  return mass;
}

Exponent ChernoffExponentFp(const LgfContext& ctx, double tau) {
  const double mean = ctx.StatisticMean(Hypothesis::kNeg);
  if (!(tau > mean)) {
    throw Error(ErrorKind::kThresholdOutOfRange,
                "E_FP needs tau > E[T|neg] = " + Fmt(mean) + ", got " +
                    Fmt(tau));
  }
  if (ctx.backend() == Backend::kGrid && tau >= ctx.grid_statistic_max()) {
    // L_neg'(u) < max T for every finite u: the supremum is the u -> inf
    // limit, -log P(T >= tau).
    return {-std::log(ctx.GridTailMass(Hypothesis::kNeg, tau, true)), kInf};
  }
  const auto slope_gap = [&](double u) {
    return ctx.LgfDerivative(Hypothesis::kNeg, u) - tau;
  };
  const auto [lo, hi] = numeric::ExpandBracket(slope_gap, 0.0, 1.0, 1.0);
  const double u = numeric::FindRoot(slope_gap, lo, hi);
  const double value = u * tau - ctx.Lgf(Hypothesis::kNeg, u);
  return {std::max(value, 0.0), u};
}

Exponent ChernoffExponentFn(const LgfContext& ctx, double tau) {
  const double mean = ctx.StatisticMean(Hypothesis::kPos);
  if (!(tau < mean)) {
    throw Error(ErrorKind::kThresholdOutOfRange,
                "E_FN needs tau < E[T|pos] = " + Fmt(mean) + ", got " +
                    Fmt(tau));
  }
  if (ctx.backend() == Backend::kGrid && tau <= ctx.grid_statistic_min()) {
    return {-std::log(ctx.GridTailMass(Hypothesis::kPos, tau, false)), -kInf};
  }
  const auto slope_gap = [&](double u) {
    return ctx.LgfDerivative(Hypothesis::kPos, u) - tau;
  };
  const auto [lo, hi] = numeric::ExpandBracket(slope_gap, 0.0, -1.0, 1.0);
  const double u = numeric::FindRoot(slope_gap, lo, hi);
  const double value = u * tau - ctx.Lgf(Hypothesis::kPos, u);
  return {std::max(value, 0.0), u};
}

ExponentReport ComputeExponentReport(const LgfContext& ctx, double tau) {
  const Exponent fp = ChernoffExponentFp(ctx, tau);
  const Exponent fn = ChernoffExponentFn(ctx, tau);
  return {tau, fp.value, fn.value, std::min(fp.value, fn.value), fp.u_star,
          fn.u_star};
}

ChernoffInfo ChernoffInformation(const DistributionPair& pair) {
  const LgfContext ctx(pair);
  // L_neg vanishes at 0 and 1 and is strictly convex, so its minimizer is
  // the unique root of the derivative inside (0, 1).
  const auto derivative = [&](double u) {
    return ctx.LgfDerivative(Hypothesis::kNeg, u);
  };
  const double u = numeric::FindRoot(derivative, 0.0, 1.0);
  return {-ctx.Lgf(Hypothesis::kNeg, u), u};
}

}  // namespace cfair
