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

#include "cfair/numeric.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cfair/error.h"

namespace cfair::numeric {

double LogSumExp(std::span<const double> x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

double FindRoot(const std::function<double(double)>& f, double lo, double hi,
                double tolerance) {
  if (lo > hi) std::swap(lo, hi);
  const double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  const double f_hi = f(hi);
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) ||
      std::isnan(f_hi)) {
    throw Error(ErrorKind::kBracketFailure,
                "no sign change on [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  const auto stop = [tolerance](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(b - a) <=
           std::max(tolerance, 4 * std::numeric_limits<double>::epsilon() *
                                   scale);
  };
  std::uintmax_t max_iter = 500;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, f_lo, f_hi, stop, max_iter);
  if (max_iter >= 500) {
    throw Error(ErrorKind::kBracketFailure, "root solver did not converge");
  }
  return 0.5 * (a + b);
}

std::pair<double, double> ExpandBracket(
    const std::function<double(double)>& f, double anchor, double direction,
    double initial_step) {
  const double f_anchor = f(anchor);
  const bool anchor_sign = std::signbit(f_anchor);
  double step = initial_step;
  while (step <= kBracketCap + std::abs(anchor)) {
    const double probe = anchor + direction * step;
    const double value = f(probe);
    if (value == 0.0 || std::signbit(value) != anchor_sign) {
      return probe < anchor ? std::make_pair(probe, anchor)
                            : std::make_pair(anchor, probe);
    }
    step *= 2;
  }
  throw Error(ErrorKind::kBracketFailure,
              "bracket expansion exceeded |u| = 1e6 from anchor " +
                  std::to_string(anchor));
}

Minimum MinimizeUnimodal(const std::function<double(double)>& f, double lo,
                         double hi) {
  std::uintmax_t max_iter = 1000;
  const auto [arg, value] = boost::math::tools::brent_find_minima(
      f, lo, hi, std::numeric_limits<double>::digits / 2, max_iter);
  return {arg, value};
}

}  // namespace cfair::numeric
