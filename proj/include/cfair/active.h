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

// Active data collection: does an extra feature X' make the unprivileged
// group more separable? It does exactly when X' carries information about
// Y beyond what X already has, i.e. I(X'; Y | X) > 0.

#ifndef CFAIR_ACTIVE_H_
#define CFAIR_ACTIVE_H_

#include <cstddef>
#include <vector>

#include "cfair/detect.h"
#include "cfair/dist.h"
#include "cfair/tradeoff.h"

namespace cfair {

// Gain and conditional mutual information are compared at this tolerance.
inline constexpr double kSeparabilityTolerance = 1e-8;

// Class-conditional joint distributions W0, W1 of (X, X').
class JointPair {
 public:
  // Row-major |x_support| x |xp_support| mass tables, one per label.
  static JointPair Grid(std::vector<double> x_support,
                        std::vector<double> xp_support,
                        std::vector<double> mass0, std::vector<double> mass1,
                        bool x_categorical = false);

  // N(mean_y, variance * I); the first `x_dims` coordinates are X.
  static JointPair Gaussian(std::vector<double> mean0,
                            std::vector<double> mean1, std::size_t x_dims,
                            double variance);

  Backend backend() const { return joint_.backend(); }
  // The pair over (X, X'); grid cells are flattened to categorical ids
  // x_index * |xp_support| + xp_index.
  const DistributionPair& joint() const { return joint_; }
  // The pair over X alone.
  const DistributionPair& marginal() const { return marginal_; }

  std::size_t x_size() const { return x_size_; }
  std::size_t xp_size() const { return xp_size_; }
  std::size_t x_dims() const { return x_dims_; }

 private:
  JointPair(DistributionPair joint, DistributionPair marginal,
            std::size_t x_size, std::size_t xp_size, std::size_t x_dims);

  DistributionPair joint_;
  DistributionPair marginal_;
  std::size_t x_size_ = 0;
  std::size_t xp_size_ = 0;
  std::size_t x_dims_ = 0;
};

// Sums W_y over x' (grid) or drops the X' coordinates (gaussian).
DistributionPair Marginalize(const JointPair& jp);

// I(X'; Y | X) in nats with p(x, x', y) = pi_y W_y(x, x').
double ConditionalMi(const JointPair& jp, const Priors& label_priors = {});

struct SeparabilityGain {
  double c_joint;
  double c_marginal;
  double gain;  // c_joint - c_marginal, never below -1e-10
};

SeparabilityGain ComputeSeparabilityGain(const JointPair& jp);

struct PostCollectionCurve {
  TradeoffCurve curve;
  // C(joint) > C(priv): the roles of the groups have flipped.
  bool joint_exceeds_priv;
};

// Trade-off sweep with the unprivileged detector built on (X, X').
PostCollectionCurve ComputePostCollectionCurve(const JointPair& jp,
                                               const DistributionPair& priv,
                                               double lo, double hi, int n);

}  // namespace cfair

#endif  // CFAIR_ACTIVE_H_
