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

// Class-conditional distributions: finite grids and isotropic Gaussians.
//
// Both representations are immutable once constructed, and construction
// enforces strict positivity of every grid mass. A pair additionally
// requires both KL divergences to be nonzero, which is what makes the
// likelihood-ratio statistic non-degenerate.

#ifndef CFAIR_DIST_H_
#define CFAIR_DIST_H_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace cfair {

enum class Backend { kGrid, kGaussian };

// Tolerance on the total mass of a grid.
inline constexpr double kMassSumTolerance = 1e-12;
// Minimum KL divergence (both directions) for a pair to count as distinct.
inline constexpr double kDistinctTolerance = 1e-10;

class GridDistribution {
 public:
  // Validates strictly positive masses summing to one. Real-valued supports
  // must be strictly increasing; categorical supports must be distinct.
  GridDistribution(std::vector<double> support, std::vector<double> mass,
                   bool categorical = false);

  // Normalizes nonnegative weights before validation.
  static GridDistribution Normalized(std::vector<double> support,
                                     std::span<const double> weights,
                                     bool categorical = false);

  // Normalizes log-domain weights with max subtraction. Throws
  // kNonFiniteNormalizer if the normalizer or any mass leaves the
  // representable range.
  static GridDistribution FromLogWeights(std::vector<double> support,
                                         std::span<const double> log_weights,
                                         bool categorical = false);

  std::size_t size() const { return mass_.size(); }
  bool categorical() const { return categorical_; }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& mass() const { return mass_; }
  const std::vector<double>& log_mass() const { return log_mass_; }

  // Expectation of the support values. Meaningless for categorical grids.
  double Mean() const;

  bool SameSupport(const GridDistribution& other) const;

 private:
  struct Trusted {};
  GridDistribution(Trusted, std::vector<double> support,
                   std::vector<double> mass, std::vector<double> log_mass,
                   bool categorical);
  void Validate() const;

  std::vector<double> support_;
  std::vector<double> mass_;
  std::vector<double> log_mass_;
  bool categorical_ = false;
};

// N(mean, variance * I).
class GaussianDistribution {
 public:
  GaussianDistribution(std::vector<double> mean, double variance);

  std::size_t dimension() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  double variance() const { return variance_; }

  double LogDensity(std::span<const double> x) const;

 private:
  std::vector<double> mean_;
  double variance_;
};

using Distribution = std::variant<GridDistribution, GaussianDistribution>;

Backend BackendOf(const Distribution& d);

// (neg, pos) = distributions under Y=0 and Y=1 for one group.
class DistributionPair {
 public:
  // Throws kBackendMismatch, kSupportMismatch (grid supports differ or
  // gaussian dimension / variance differ) or kNotDistinct.
  DistributionPair(Distribution neg, Distribution pos);

  Backend backend() const { return BackendOf(neg_); }
  const Distribution& neg() const { return neg_; }
  const Distribution& pos() const { return pos_; }

  // Backend-specific views; throw kBackendMismatch on the wrong backend.
  const GridDistribution& neg_grid() const;
  const GridDistribution& pos_grid() const;
  const GaussianDistribution& neg_gaussian() const;
  const GaussianDistribution& pos_gaussian() const;

 private:
  Distribution neg_;
  Distribution pos_;
};

// Checks that two distributions can be compared pointwise: same backend and
// same grid support, or same gaussian dimension.
void RequireCompatible(const Distribution& a, const Distribution& b);

// D(a || b) in nats.
double KlDivergence(const Distribution& a, const Distribution& b);

// Normalized geometric mixture neg^(1-t) * pos^t. For gaussians the mean
// moves affinely in t and the variance is unchanged.
Distribution Tilt(const DistributionPair& pair, double t);

struct Discretization {
  GridDistribution grid;
  // Gaussian probability captured by the cells before renormalization.
  double captured_mass;
  // Set when captured_mass < 1 - 1e-6.
  bool range_too_narrow;
};

// Midpoint rule on n uniform cells of [lo, hi]. One-dimensional only.
Discretization Discretize(const GaussianDistribution& g, double lo, double hi,
                          int n);

}  // namespace cfair

#endif  // CFAIR_DIST_H_
