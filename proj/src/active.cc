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

#include "cfair/active.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cfair/error.h"
#include "cfair/lgf.h"

namespace cfair {
namespace {

// I(Y; S) where S is the log-likelihood ratio of two isotropic gaussians at
// separation k: S | Y=0 ~ N(-k/2, k), S | Y=1 ~ N(k/2, k).
double LlrMutualInformation(double k, const Priors& priors) {
  const double sd = std::sqrt(k);
  const double log_pi0 = std::log(priors.neg);
  const double log_pi1 = std::log(priors.pos);
  // log(pi0 + pi1 e^s), computed without overflow.
  const auto log_mix = [&](double s) {
    const double a = log_pi0;
    const double b = log_pi1 + s;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
  };
  // E_z[f(m + sd z)] for z standard normal.
  const auto expect = [&](double mean, auto&& f) {
    const auto integrand = [&](double z) {
      return std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi) *
             f(mean + sd * z);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), 15, 1e-14);
  };
  // log f0/f = -log(pi0 + pi1 e^s); log f1/f = s - log(pi0 + pi1 e^s).
  const double term0 = expect(-0.5 * k, [&](double s) { return -log_mix(s); });
  const double term1 =
      expect(0.5 * k, [&](double s) { return s - log_mix(s); });
  return priors.neg * term0 + priors.pos * term1;
}

double SquaredNorm(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

}  // namespace

JointPair::JointPair(DistributionPair joint, DistributionPair marginal,
                     std::size_t x_size, std::size_t xp_size,
                     std::size_t x_dims)
    : joint_(std::move(joint)),
      marginal_(std::move(marginal)),
      x_size_(x_size),
      xp_size_(xp_size),
      x_dims_(x_dims) {}

JointPair JointPair::Grid(std::vector<double> x_support,
                          std::vector<double> xp_support,
                          std::vector<double> mass0,
                          std::vector<double> mass1, bool x_categorical) {
  const std::size_t nx = x_support.size();
  const std::size_t nxp = xp_support.size();
  if (nx == 0 || nxp == 0 || mass0.size() != nx * nxp ||
      mass1.size() != nx * nxp) {
    throw Error(ErrorKind::kInvalidDistribution,
                "joint mass tables must be |x| * |x'| long");
  }
  std::vector<double> ids(nx * nxp);
  std::iota(ids.begin(), ids.end(), 0.0);
  DistributionPair joint(GridDistribution(ids, mass0, true),
                         GridDistribution(ids, mass1, true));

  std::vector<double> m0(nx, 0.0);
  std::vector<double> m1(nx, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < nxp; ++j) {
      m0[i] += mass0[i * nxp + j];
      m1[i] += mass1[i * nxp + j];
    }
  }
  DistributionPair marginal(
      GridDistribution::Normalized(x_support, m0, x_categorical),
      GridDistribution::Normalized(x_support, m1, x_categorical));
  return JointPair(std::move(joint), std::move(marginal), nx, nxp, 0);
}

JointPair JointPair::Gaussian(std::vector<double> mean0,
                              std::vector<double> mean1, std::size_t x_dims,
                              double variance) {
  if (x_dims == 0 || x_dims >= mean0.size() || mean0.size() != mean1.size()) {
    throw Error(ErrorKind::kInvalidDistribution,
                "gaussian joint needs 1 <= x_dims < dimension");
  }
  std::vector<double> x0(mean0.begin(), mean0.begin() + x_dims);
  std::vector<double> x1(mean1.begin(), mean1.begin() + x_dims);
  DistributionPair marginal(GaussianDistribution(std::move(x0), variance),
                            GaussianDistribution(std::move(x1), variance));
  DistributionPair joint(GaussianDistribution(std::move(mean0), variance),
                         GaussianDistribution(std::move(mean1), variance));
  return JointPair(std::move(joint), std::move(marginal), 0, 0, x_dims);
}

DistributionPair Marginalize(const JointPair& jp) { return jp.marginal(); }

double ConditionalMi(const JointPair& jp, const Priors& label_priors) {
  label_priors.Validate();
  if (jp.backend() == Backend::kGaussian) {
    const auto& neg = jp.joint().neg_gaussian();
    const auto& pos = jp.joint().pos_gaussian();
    std::vector<double> diff(neg.dimension());
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = pos.mean()[i] - neg.mean()[i];
    }
    const std::span<const double> all(diff);
    const double k_joint = SquaredNorm(all) / neg.variance();
    const double k_marginal =
        SquaredNorm(all.first(jp.x_dims())) / neg.variance();
    // With isotropic noise X' is independent of X given Y, so X' is
    // uninformative given X exactly when its mean does not move with Y.
    if (SquaredNorm(all.subspan(jp.x_dims())) == 0.0) return 0.0;
    // Chain rule: I(X'; Y | X) = I(X, X'; Y) - I(X; Y), each carried by the
    // corresponding log-likelihood ratio.
    const double cmi = LlrMutualInformation(k_joint, label_priors) -
                       LlrMutualInformation(k_marginal, label_priors);
    return std::max(cmi, 0.0);
  }

  const auto& w0 = jp.joint().neg_grid().mass();
  const auto& w1 = jp.joint().pos_grid().mass();
  const double pi[2] = {label_priors.neg, label_priors.pos};
  double cmi = 0.0;
  for (std::size_t i = 0; i < jp.x_size(); ++i) {
    double p_xy[2] = {0.0, 0.0};
    for (std::size_t j = 0; j < jp.xp_size(); ++j) {
      p_xy[0] += pi[0] * w0[i * jp.xp_size() + j];
      p_xy[1] += pi[1] * w1[i * jp.xp_size() + j];
    }
    const double p_x = p_xy[0] + p_xy[1];
    for (std::size_t j = 0; j < jp.xp_size(); ++j) {
      const double p_xxpy[2] = {pi[0] * w0[i * jp.xp_size() + j],
                                pi[1] * w1[i * jp.xp_size() + j]};
      const double p_xxp = p_xxpy[0] + p_xxpy[1];
      for (int y = 0; y < 2; ++y) {
        cmi += p_xxpy[y] * std::log(p_xxpy[y] * p_x / (p_xxp * p_xy[y]));
      }
    }
  }
  return std::max(cmi, 0.0);
}

SeparabilityGain ComputeSeparabilityGain(const JointPair& jp) {
  const double c_joint = ChernoffInformation(jp.joint()).c;
  const double c_marginal = ChernoffInformation(jp.marginal()).c;
  return {c_joint, c_marginal, c_joint - c_marginal};
}

PostCollectionCurve ComputePostCollectionCurve(const JointPair& jp,
                                               const DistributionPair& priv,
                                               double lo, double hi, int n) {
  const GroupScenario s{jp.joint(), priv, {}, {}, {}};
  const GroupOrder order = CheckGroupOrder(s);
  return {SweepCurve(s, lo, hi, n), order.contradicts_labels};
}

}  // namespace cfair
