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

// Scalar numerics shared by the exponent solvers: log-space reductions,
// bracketed root finding and bounded 1-D minimization.

#ifndef CFAIR_NUMERIC_H_
#define CFAIR_NUMERIC_H_

#include <functional>
#include <span>
#include <utility>

namespace cfair::numeric {

// Largest |u| a bracket is allowed to reach before giving up.
inline constexpr double kBracketCap = 1e6;

// Absolute tolerance on the abscissa of every root / minimizer.
inline constexpr double kArgTolerance = 1e-13;

// log(sum(exp(x))) with max subtraction. Returns -inf for an empty span.
double LogSumExp(std::span<const double> x);

// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign
// (or zero). Throws kBracketFailure when the signs agree.
double FindRoot(const std::function<double(double)>& f, double lo, double hi,
                double tolerance = kArgTolerance);

// Grows the interval [anchor, anchor + direction * step] geometrically
// (factor 2) until `f` changes sign relative to f(anchor). Returns the
// bracket ordered as (lo, hi). Throws kBracketFailure past kBracketCap.
std::pair<double, double> ExpandBracket(
    const std::function<double(double)>& f, double anchor, double direction,
    double initial_step);

struct Minimum {
  double arg;
  double value;
};

// Minimizer of a unimodal f on [lo, hi] (Brent: golden section with
// parabolic steps).
Minimum MinimizeUnimodal(const std::function<double(double)>& f, double lo,
                         double hi);

}  // namespace cfair::numeric

#endif  // CFAIR_NUMERIC_H_
