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

#include "cfair/dist.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_set>
#include <utility>

#include "cfair/error.h"
#include "cfair/numeric.h"

namespace cfair {
namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

GridDistribution::GridDistribution(std::vector<double> support,
                                   std::vector<double> mass, bool categorical)
    : support_(std::move(support)),
      mass_(std::move(mass)),
      categorical_(categorical) {
  log_mass_.reserve(mass_.size());
  for (double m : mass_) log_mass_.push_back(std::log(m));
  Validate();
}

GridDistribution::GridDistribution(Trusted, std::vector<double> support,
                                   std::vector<double> mass,
                                   std::vector<double> log_mass,
                                   bool categorical)
    : support_(std::move(support)),
      mass_(std::move(mass)),
      log_mass_(std::move(log_mass)),
      categorical_(categorical) {
  Validate();
}

GridDistribution GridDistribution::Normalized(std::vector<double> support,
                                              std::span<const double> weights,
                                              bool categorical) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorKind::kInvalidDistribution,
                "weights must have a positive finite total");
  }
  std::vector<double> mass(weights.begin(), weights.end());
  for (double& m : mass) m /= total;
  return GridDistribution(std::move(support), std::move(mass), categorical);
}

GridDistribution GridDistribution::FromLogWeights(
    std::vector<double> support, std::span<const double> log_weights,
    bool categorical) {
  const double normalizer = numeric::LogSumExp(log_weights);
  if (!std::isfinite(normalizer)) {
    throw Error(ErrorKind::kNonFiniteNormalizer,
                "log-space normalizer is not finite");
  }
  std::vector<double> mass(log_weights.size());
  std::vector<double> log_mass(log_weights.size());
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    log_mass[i] = log_weights[i] - normalizer;
    mass[i] = std::exp(log_mass[i]);
    if (!(mass[i] > 0.0)) {
      throw Error(ErrorKind::kNonFiniteNormalizer,
                  "normalized mass underflows to zero at index " +
                      std::to_string(i));
    }
  }
  return GridDistribution(Trusted{}, std::move(support), std::move(mass),
                          std::move(log_mass), categorical);
}

void GridDistribution::Validate() const {
  if (mass_.empty()) {
    throw Error(ErrorKind::kInvalidDistribution, "empty grid");
  }
  if (support_.size() != mass_.size()) {
    throw Error(ErrorKind::kInvalidDistribution,
                "support and mass lengths differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (!(mass_[i] > 0.0) || !std::isfinite(mass_[i])) {
      throw Error(ErrorKind::kInvalidDistribution,
                  "A1 violated: mass at index " + std::to_string(i) +
                      " is not strictly positive");
    }
    total += mass_[i];
  }
  if (std::abs(total - 1.0) > kMassSumTolerance) {
    throw Error(ErrorKind::kInvalidDistribution,
                "masses sum to " + std::to_string(total) + ", not 1");
  }
  if (categorical_) {
    std::unordered_set<double> seen(support_.begin(), support_.end());
    if (seen.size() != support_.size()) {
      throw Error(ErrorKind::kInvalidDistribution,
                  "categorical support ids are not distinct");
    }
  } else {
    for (std::size_t i = 1; i < support_.size(); ++i) {
      if (!(support_[i] > support_[i - 1])) {
        throw Error(ErrorKind::kInvalidDistribution,
                    "support is not strictly increasing");
      }
    }
  }
}

double GridDistribution::Mean() const {
  double mean = 0.0;
  for (std::size_t i = 0; i < mass_.size(); ++i) mean += mass_[i] * support_[i];
  return mean;
}

bool GridDistribution::SameSupport(const GridDistribution& other) const {
  return categorical_ == other.categorical_ && support_ == other.support_;
}

GaussianDistribution::GaussianDistribution(std::vector<double> mean,
                                           double variance)
    : mean_(std::move(mean)), variance_(variance) {
  if (mean_.empty()) {
    throw Error(ErrorKind::kInvalidDistribution,
                "gaussian mean must have dimension >= 1");
  }
  if (!(variance_ > 0.0) || !std::isfinite(variance_)) {
    throw Error(ErrorKind::kInvalidDistribution,
                "gaussian variance must be strictly positive");
  }
  for (double m : mean_) {
    if (!std::isfinite(m)) {
      throw Error(ErrorKind::kInvalidDistribution, "non-finite gaussian mean");
    }
  }
}

double GaussianDistribution::LogDensity(std::span<const double> x) const {
  const double d = static_cast<double>(mean_.size());
  return -0.5 * d * std::log(2 * std::numbers::pi * variance_) -
         SquaredDistance(x, mean_) / (2 * variance_);
}

Backend BackendOf(const Distribution& d) {
  return std::holds_alternative<GridDistribution>(d) ? Backend::kGrid
                                                     : Backend::kGaussian;
}

void RequireCompatible(const Distribution& a, const Distribution& b) {
  if (BackendOf(a) != BackendOf(b)) {
    throw Error(ErrorKind::kBackendMismatch,
                "distributions use different backends");
  }
  if (const auto* ga = std::get_if<GridDistribution>(&a)) {
    if (!ga->SameSupport(std::get<GridDistribution>(b))) {
      throw Error(ErrorKind::kSupportMismatch, "grid supports differ");
    }
  } else if (std::get<GaussianDistribution>(a).dimension() !=
             std::get<GaussianDistribution>(b).dimension()) {
    throw Error(ErrorKind::kSupportMismatch, "gaussian dimensions differ");
  }
}

DistributionPair::DistributionPair(Distribution neg, Distribution pos)
    : neg_(std::move(neg)), pos_(std::move(pos)) {
  RequireCompatible(neg_, pos_);
  if (backend() == Backend::kGaussian &&
      std::get<GaussianDistribution>(neg_).variance() !=
          std::get<GaussianDistribution>(pos_).variance()) {
    throw Error(ErrorKind::kSupportMismatch,
                "gaussian pair members must share one variance");
  }
  if (!(KlDivergence(neg_, pos_) > kDistinctTolerance) ||
      !(KlDivergence(pos_, neg_) > kDistinctTolerance)) {
    throw Error(ErrorKind::kNotDistinct,
                "A2 violated: both KL divergences must exceed 1e-10");
  }
}

const GridDistribution& DistributionPair::neg_grid() const {
  if (backend() != Backend::kGrid) {
    throw Error(ErrorKind::kBackendMismatch, "pair is not grid-backed");
  }
  return std::get<GridDistribution>(neg_);
}

const GridDistribution& DistributionPair::pos_grid() const {
  if (backend() != Backend::kGrid) {
    throw Error(ErrorKind::kBackendMismatch, "pair is not grid-backed");
  }
  return std::get<GridDistribution>(pos_);
}

const GaussianDistribution& DistributionPair::neg_gaussian() const {
  if (backend() != Backend::kGaussian) {
    throw Error(ErrorKind::kBackendMismatch, "pair is not gaussian-backed");
  }
  return std::get<GaussianDistribution>(neg_);
}

const GaussianDistribution& DistributionPair::pos_gaussian() const {
  if (backend() != Backend::kGaussian) {
    throw Error(ErrorKind::kBackendMismatch, "pair is not gaussian-backed");
  }
  return std::get<GaussianDistribution>(pos_);
}

double KlDivergence(const Distribution& a, const Distribution& b) {
  RequireCompatible(a, b);
  if (const auto* ga = std::get_if<GridDistribution>(&a)) {
    const auto& gb = std::get<GridDistribution>(b);
    double kl = 0.0;
    for (std::size_t i = 0; i < ga->size(); ++i) {
      kl += ga->mass()[i] * (ga->log_mass()[i] - gb.log_mass()[i]);
    }
    return std::max(kl, 0.0);
  }
  const auto& na = std::get<GaussianDistribution>(a);
  const auto& nb = std::get<GaussianDistribution>(b);
  const double d = static_cast<double>(na.dimension());
  const double ratio = na.variance() / nb.variance();
  return 0.5 * d * (ratio - 1.0 - std::log(ratio)) +
         SquaredDistance(na.mean(), nb.mean()) / (2 * nb.variance());
}

Distribution Tilt(const DistributionPair& pair, double t) {
  if (pair.backend() == Backend::kGaussian) {
    const auto& neg = pair.neg_gaussian();
    const auto& pos = pair.pos_gaussian();
    std::vector<double> mean(neg.dimension());
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i] = (1 - t) * neg.mean()[i] + t * pos.mean()[i];
    }
    return GaussianDistribution(std::move(mean), neg.variance());
  }
  if (t == 0.0) return pair.neg();
  if (t == 1.0) return pair.pos();
  const auto& neg = pair.neg_grid();
  const auto& pos = pair.pos_grid();
  std::vector<double> log_weights(neg.size());
  for (std::size_t i = 0; i < neg.size(); ++i) {
    log_weights[i] = (1 - t) * neg.log_mass()[i] + t * pos.log_mass()[i];
  }
  return GridDistribution::FromLogWeights(neg.support(), log_weights,
                                          neg.categorical());
}

Discretization Discretize(const GaussianDistribution& g, double lo, double hi,
                          int n) {
  if (g.dimension() != 1) {
    throw Error(ErrorKind::kBackendUnsupported,
                "only one-dimensional gaussians can be discretized");
  }
  if (!(lo < hi) || n < 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "discretize needs lo < hi and n >= 3");
  }
  const double width = (hi - lo) / n;
  std::vector<double> centers(n);
  std::vector<double> log_weights(n);
  for (int i = 0; i < n; ++i) {
    centers[i] = lo + (i + 0.5) * width;
    log_weights[i] = g.LogDensity(std::span<const double>(&centers[i], 1)) +
                     std::log(width);
  }
  const double captured = std::exp(numeric::LogSumExp(log_weights));
  auto grid = GridDistribution::FromLogWeights(std::move(centers), log_weights);
  return {std::move(grid), captured, captured < 1.0 - 1e-6};
}

}  // namespace cfair
