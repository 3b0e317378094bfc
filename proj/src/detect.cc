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

#include "cfair/detect.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>
#include <vector>

#include "cfair/error.h"

namespace cfair {
namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::uint64_t kShardSize = 1 << 16;

// SplitMix64 finalizer; a bijective mix of the 64-bit counter.
std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based uniform in (0, 1): the value depends only on (seed, counter).
double Uniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits =
      Mix(Mix(seed ^ 0x9e3779b97f4a7c15ULL) + counter * 0x9e3779b97f4a7c15ULL);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double StandardNormal(std::uint64_t seed, std::uint64_t counter) {
  const double u1 = Uniform(seed, 2 * counter);
  const double u2 = Uniform(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double HalfWidth(double p, std::uint64_t n) {
  return kZ95 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Number of draws in [begin, end) under hypothesis h that are accepted.
std::uint64_t CountAccepted(const LgfContext& ctx, const Distribution& eval,
                            double tau, std::uint64_t seed,
                            std::uint64_t stream, std::uint64_t begin,
                            std::uint64_t end) {
  std::uint64_t accepted = 0;
  if (const auto* grid = std::get_if<GridDistribution>(&eval)) {
    std::vector<double> cumulative(grid->size());
    double running = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      running += grid->mass()[i];
      cumulative[i] = running;
    }
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u = Uniform(seed, stream + i) * running;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) --it;
      const auto index = static_cast<std::size_t>(it - cumulative.begin());
      if (ctx.Statistic(index) >= tau) ++accepted;
    }
    return accepted;
  }
  const auto& g = std::get<GaussianDistribution>(eval);
  const std::size_t dim = g.dimension();
  const double sd = std::sqrt(g.variance());
  std::vector<double> x(dim);
  for (std::uint64_t i = begin; i < end; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      x[j] = g.mean()[j] + sd * StandardNormal(seed, (stream + i) * dim + j);
    }
    if (ctx.Statistic(x) >= tau) ++accepted;
  }
  return accepted;
}

std::uint64_t ShardedCount(const LgfContext& ctx, const Distribution& eval,
                           double tau, std::uint64_t seed,
                           std::uint64_t stream, std::uint64_t n) {
  std::vector<std::future<std::uint64_t>> shards;
  for (std::uint64_t begin = 0; begin < n; begin += kShardSize) {
    const std::uint64_t end = std::min(n, begin + kShardSize);
    shards.push_back(std::async(std::launch::async, [&, begin, end] {
      return CountAccepted(ctx, eval, tau, seed, stream, begin, end);
    }));
  }
  std::uint64_t total = 0;
  for (auto& shard : shards) total += shard.get();
  return total;
}

}  // namespace

void Priors::Validate() const {
  if (!(neg > 0.0) || !(pos > 0.0) || std::abs(neg + pos - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument,
                "priors must be positive and sum to 1");
  }
}

ErrorRates ComputeErrorRates(const Detector& det,
                             const DistributionPair& eval_pair,
                             const Priors& priors) {
  priors.Validate();
  const LgfContext ctx(det.base_pair, eval_pair);
  ErrorRates rates;
  if (ctx.backend() == Backend::kGaussian) {
    const double sd = std::sqrt(2.0 * ctx.StatisticVariance());
    const double m0 = ctx.StatisticMean(Hypothesis::kNeg);
    const double m1 = ctx.StatisticMean(Hypothesis::kPos);
    rates.p_fp = 0.5 * std::erfc((det.tau - m0) / sd);
    rates.p_fn = 0.5 * std::erfc((m1 - det.tau) / sd);
    rates.method = RateMethod::kClosedForm;
  } else {
    const auto& neg = eval_pair.neg_grid();
    const auto& pos = eval_pair.pos_grid();
    for (std::size_t i = 0; i < neg.size(); ++i) {
      if (ctx.Statistic(i) >= det.tau) {
        rates.p_fp += neg.mass()[i];
      } else {
        rates.p_fn += pos.mass()[i];
      }
    }
    rates.p_fp = std::clamp(rates.p_fp, 0.0, 1.0);
    rates.p_fn = std::clamp(rates.p_fn, 0.0, 1.0);
    rates.method = RateMethod::kGridSum;
  }
  rates.p_e = priors.neg * rates.p_fp + priors.pos * rates.p_fn;
  return rates;
}

ErrorRates MonteCarloRates(const Detector& det,
                           const DistributionPair& eval_pair, std::uint64_t n,
                           std::uint64_t seed, const Priors& priors) {
  priors.Validate();
  if (n < 1000) {
    throw Error(ErrorKind::kInvalidArgument,
                "Monte Carlo needs at least 1000 samples");
  }
  const LgfContext ctx(det.base_pair, eval_pair);
  // Disjoint counter streams per hypothesis.
  const std::uint64_t accepted_neg =
      ShardedCount(ctx, eval_pair.neg(), det.tau, seed, 0, n);
  const std::uint64_t accepted_pos =
      ShardedCount(ctx, eval_pair.pos(), det.tau, seed, n, n);

  ErrorRates rates;
  rates.method = RateMethod::kMonteCarlo;
  rates.samples = n;
  const double count = static_cast<double>(n);
  rates.p_fp = static_cast<double>(accepted_neg) / count;
  rates.p_fn = static_cast<double>(n - accepted_pos) / count;
  rates.p_e = priors.neg * rates.p_fp + priors.pos * rates.p_fn;
  rates.ci_fp = HalfWidth(rates.p_fp, n);
  rates.ci_fn = HalfWidth(rates.p_fn, n);
  rates.ci_e = kZ95 * std::sqrt(priors.neg * priors.neg * rates.p_fp *
                                    (1 - rates.p_fp) / count +
                                priors.pos * priors.pos * rates.p_fn *
                                    (1 - rates.p_fn) / count);
  return rates;
}

double BayesThreshold(const Priors& priors) {
  priors.Validate();
  return std::log(priors.neg / priors.pos);
}

double PriorAdjustedExponent(const LgfContext& ctx, double tau,
                             const Priors& priors) {
  priors.Validate();
  const ExponentReport report = ComputeExponentReport(ctx, tau);
  const double value = std::min(report.e_fp - std::log(2 * priors.neg),
                                report.e_fn - std::log(2 * priors.pos));
  if (value < 0.0) {
    throw Error(ErrorKind::kNegativeAdjustedExponent,
                "prior-adjusted exponent is " + std::to_string(value) +
                    " at tau = " + std::to_string(tau));
  }
  return value;
}

}  // namespace cfair
