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

#include "cfair/scenario.h"

#include <fstream>
#include <sstream>
#include <utility>

#include <yaml-cpp/yaml.h>

#include "cfair/error.h"

namespace cfair {
namespace {

[[noreturn]] void Invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kInvalidArgument, where + ": " + what);
}

YAML::Node Require(const YAML::Node& node, const std::string& key,
                   const std::string& where) {
  if (!node.IsMap() || !node[key]) Invalid(where, "missing key '" + key + "'");
  return node[key];
}

template <typename T>
T As(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Invalid(where, "unexpected value type");
  }
}

std::vector<double> Vector(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) Invalid(where, "expected a list of numbers");
  return As<std::vector<double>>(node, where);
}

// Row-major flattening of a list of rows.
std::vector<double> Table(const YAML::Node& node, std::size_t rows,
                          std::size_t cols, const std::string& where) {
  if (!node.IsSequence() || node.size() != rows) {
    Invalid(where, "expected " + std::to_string(rows) + " rows");
  }
  std::vector<double> out;
  out.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::vector<double> row =
        Vector(node[i], where + "[" + std::to_string(i) + "]");
    if (row.size() != cols) {
      Invalid(where, "row " + std::to_string(i) + " must have " +
                         std::to_string(cols) + " entries");
    }
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

Priors ParsePriors(const YAML::Node& node, const std::string& where) {
  Priors p;
  if (!node) return p;
  p.neg = As<double>(Require(node, "neg", where), where + ".neg");
  p.pos = As<double>(Require(node, "pos", where), where + ".pos");
  p.Validate();
  return p;
}

GaussianDistribution ParseGaussian(const YAML::Node& node,
                                   const std::string& where) {
  return GaussianDistribution(
      Vector(Require(node, "mean", where), where + ".mean"),
      As<double>(Require(node, "variance", where), where + ".variance"));
}

DistributionPair ParsePair(const YAML::Node& node, const std::string& where,
                           std::vector<std::string>& warnings) {
  const std::string backend =
      As<std::string>(Require(node, "backend", where), where + ".backend");
  if (backend == "gaussian") {
    GaussianDistribution neg =
        ParseGaussian(Require(node, "neg", where), where + ".neg");
    GaussianDistribution pos =
        ParseGaussian(Require(node, "pos", where), where + ".pos");
    const YAML::Node disc = node["discretize"];
    if (!disc) return DistributionPair(std::move(neg), std::move(pos));
    const std::string dw = where + ".discretize";
    const double lo = As<double>(Require(disc, "lo", dw), dw + ".lo");
    const double hi = As<double>(Require(disc, "hi", dw), dw + ".hi");
    const int n = As<int>(Require(disc, "points", dw), dw + ".points");
    Discretization d0 = Discretize(neg, lo, hi, n);
    Discretization d1 = Discretize(pos, lo, hi, n);
    for (const Discretization* d : {&d0, &d1}) {
      if (d->range_too_narrow) {
        warnings.push_back(where + ": discretization range captures only " +
                           std::to_string(d->captured_mass) +
                           " of a gaussian's mass");
      }
    }
    return DistributionPair(std::move(d0.grid), std::move(d1.grid));
  }
  if (backend == "grid") {
    const bool categorical =
        node["categorical"] ? As<bool>(node["categorical"], where) : false;
    std::vector<double> support =
        Vector(Require(node, "support", where), where + ".support");
    std::vector<double> neg = Vector(Require(node, "neg", where), where + ".neg");
    std::vector<double> pos = Vector(Require(node, "pos", where), where + ".pos");
    if (neg.size() != support.size() || pos.size() != support.size()) {
      Invalid(where, "mass lists must match the support length");
    }
    return DistributionPair(GridDistribution(support, neg, categorical),
                            GridDistribution(support, pos, categorical));
  }
  Invalid(where, "backend must be 'gaussian' or 'grid'");
}

JointPair ParseJoint(const YAML::Node& node) {
  const std::string where = "joint";
  const std::string backend =
      As<std::string>(Require(node, "backend", where), where + ".backend");
  if (backend == "gaussian") {
    const GaussianDistribution neg =
        ParseGaussian(Require(node, "neg", where), where + ".neg");
    const GaussianDistribution pos =
        ParseGaussian(Require(node, "pos", where), where + ".pos");
    if (neg.variance() != pos.variance()) {
      Invalid(where, "neg and pos must share one variance");
    }
    return JointPair::Gaussian(
        neg.mean(), pos.mean(),
        As<std::size_t>(Require(node, "x_dims", where), where + ".x_dims"),
        neg.variance());
  }
  if (backend == "grid") {
    std::vector<double> xs =
        Vector(Require(node, "x_support", where), where + ".x_support");
    std::vector<double> xps =
        Vector(Require(node, "xp_support", where), where + ".xp_support");
    std::vector<double> neg =
        Table(Require(node, "neg", where), xs.size(), xps.size(), where + ".neg");
    std::vector<double> pos =
        Table(Require(node, "pos", where), xs.size(), xps.size(), where + ".pos");
    const bool categorical =
        node["categorical"] ? As<bool>(node["categorical"], where) : false;
    return JointPair::Grid(std::move(xs), std::move(xps), std::move(neg),
                           std::move(pos), categorical);
  }
  Invalid(where, "backend must be 'gaussian' or 'grid'");
}

std::optional<SweepRange> ParseSweep(const YAML::Node& node,
                                     const std::string& where,
                                     int default_points) {
  if (!node) return std::nullopt;
  SweepRange r;
  r.lo = As<double>(Require(node, "lo", where), where + ".lo");
  r.hi = As<double>(Require(node, "hi", where), where + ".hi");
  r.points = node["points"] ? As<int>(node["points"], where + ".points")
                            : default_points;
  if (r.points < 1 || r.lo > r.hi) Invalid(where, "need points >= 1, lo <= hi");
  return r;
}

}  // namespace

Scenario ParseScenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    Invalid("scenario", std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap()) Invalid("scenario", "top level must be a mapping");

  std::vector<std::string> warnings;
  const YAML::Node groups = Require(root, "groups", "scenario");
  DistributionPair unpriv = ParsePair(
      Require(groups, "unprivileged", "groups"), "groups.unprivileged",
      warnings);
  DistributionPair priv = ParsePair(Require(groups, "privileged", "groups"),
                                    "groups.privileged", warnings);

  Scenario s(GroupScenario{std::move(unpriv), std::move(priv), {}, {}, {}});
  s.warnings = std::move(warnings);

  if (const YAML::Node priors = root["priors"]) {
    if (const YAML::Node labels = priors["labels"]) {
      s.groups.unpriv_labels =
          ParsePriors(labels["unprivileged"], "priors.labels.unprivileged");
      s.groups.priv_labels =
          ParsePriors(labels["privileged"], "priors.labels.privileged");
    }
    if (const YAML::Node g = priors["groups"]) {
      s.groups.groups.unpriv = As<double>(
          Require(g, "unprivileged", "priors.groups"), "priors.groups");
      s.groups.groups.priv = As<double>(
          Require(g, "privileged", "priors.groups"), "priors.groups");
    }
  }
  s.groups.Validate();

  if (const YAML::Node joint = root["joint"]) s.joint = ParseJoint(joint);

  if (const YAML::Node pairs = root["pairs"]) {
    if (!pairs.IsSequence()) Invalid("pairs", "expected a list");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string where = "pairs[" + std::to_string(i) + "]";
      const std::string name =
          As<std::string>(Require(pairs[i], "name", where), where + ".name");
      s.pairs.push_back({name, ParsePair(pairs[i], where, s.warnings)});
    }
  }

  if (const YAML::Node sweep = root["sweep"]) {
    if (sweep["points"]) {
      s.default_points = As<int>(sweep["points"], "sweep.points");
      if (s.default_points < 1) Invalid("sweep.points", "must be >= 1");
    }
    s.tradeoff_sweep =
        ParseSweep(sweep["tradeoff"], "sweep.tradeoff", s.default_points);
    s.active_sweep = ParseSweep(sweep["active"], "sweep.active", s.default_points);
  }

  if (const YAML::Node out = root["output"]) {
    if (out["tradeoff"]) s.tradeoff_out = As<std::string>(out["tradeoff"], "output");
    if (out["active"]) s.active_out = As<std::string>(out["active"], "output");
    if (out["ideal_dump"]) {
      s.ideal_dump = As<std::string>(out["ideal_dump"], "output");
    }
  }

  if (const YAML::Node mc = root["monte_carlo"]) {
    if (mc["samples"]) {
      s.mc_samples = As<std::uint64_t>(mc["samples"], "monte_carlo.samples");
    }
    if (mc["seed"]) s.mc_seed = As<std::uint64_t>(mc["seed"], "monte_carlo.seed");
  }

  if (const YAML::Node v = root["validate"]) {
    const YAML::Node dets = Require(v, "detectors", "validate");
    if (!dets.IsSequence()) Invalid("validate.detectors", "expected a list");
    for (std::size_t i = 0; i < dets.size(); ++i) {
      const std::string where = "validate.detectors[" + std::to_string(i) + "]";
      DetectorSpec d;
      d.group = As<std::string>(Require(dets[i], "group", where), where);
      if (d.group != "unprivileged" && d.group != "privileged") {
        Invalid(where, "group must be 'unprivileged' or 'privileged'");
      }
      d.tau = dets[i]["tau"] ? As<double>(dets[i]["tau"], where) : 0.0;
      s.detectors.push_back(d);
    }
  }
  if (s.detectors.empty()) {
    s.detectors = {{"unprivileged", 0.0}, {"privileged", 0.0}};
  }

  if (const YAML::Node ideal = root["ideal"]) {
    s.kl_priors = ParsePriors(ideal["priors"], "ideal.priors");
  }
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseScenario(text.str());
}

}  // namespace cfair
