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

#include "cfair/commands.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "cfair/active.h"
#include "cfair/detect.h"
#include "cfair/ideal.h"
#include "cfair/lgf.h"
#include "cfair/scenario.h"

namespace cfair {
namespace {

constexpr int kMcCiWidths = 3;  // CI half-widths allowed before flagging

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << contents;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string Num(double x) { return fmt::format("{:.12g}", x); }

// Threshold on the unprivileged LR statistic giving the privileged group's
// Bayes FNR exponent; 0 when the two groups are equally separable.
double FairThreshold(const DistributionPair& unpriv,
                     const DistributionPair& priv) {
  const double c0 = ChernoffInformation(unpriv).c;
  const double c1 = ChernoffInformation(priv).c;
  if (std::abs(c0 - c1) < kUnbiasedTolerance) return 0.0;
  return FnrMatchingThreshold(LgfContext(unpriv), c1);
}

SweepRange DefaultRange(const DistributionPair& unpriv,
                        const DistributionPair& priv, int points) {
  const double tau = FairThreshold(unpriv, priv);
  return tau <= 0.0 ? SweepRange{tau, 0.0, points}
                    : SweepRange{0.0, tau, points};
}

std::string ActivePath(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return out.substr(0, out.size() - suffix.size()) + "_active.csv";
  }
  return out + "_active.csv";
}

void PrintWarnings(const Scenario& s, std::ostream& err) {
  for (const std::string& w : s.warnings) err << "warning: " << w << '\n';
}

void ChernoffRow(std::ostream& out, const std::string& name,
                 const DistributionPair& pair) {
  const ChernoffInfo info = ChernoffInformation(pair);
  out << fmt::format("{:<24}{:>20}{:>20}\n", name, Num(info.c),
                     Num(info.u_star));
}

int CmdChernoff(const Scenario& s, std::ostream& out) {
  out << fmt::format("{:<24}{:>20}{:>20}\n", "pair", "C", "u*");
  ChernoffRow(out, "unprivileged", s.groups.unpriv);
  ChernoffRow(out, "privileged", s.groups.priv);
  for (const NamedPair& p : s.pairs) ChernoffRow(out, p.name, p.pair);
  if (s.joint) {
    ChernoffRow(out, "joint", s.joint->joint());
    ChernoffRow(out, "joint_marginal", s.joint->marginal());
  }
  return exit_code::kOk;
}

int CmdTradeoff(const Scenario& s, const CommandOptions& opt,
                std::ostream& out, std::ostream& err) {
  if (opt.active && !s.joint) {
    throw Error(ErrorKind::kInvalidArgument,
                "--active needs a 'joint' section in the scenario");
  }
  const SweepRange range =
      s.tradeoff_sweep.value_or(DefaultRange(s.groups.unpriv, s.groups.priv,
                                             s.default_points));
  const TradeoffCurve curve =
      SweepCurve(s.groups, range.lo, range.hi, range.points);
  if (curve.range_shrunk) {
    err << "warning: sweep range clipped to the valid exponent interval\n";
  }
  const std::string path = opt.out.value_or(s.tradeoff_out);
  WriteFile(path, TradeoffCsv(curve));
  out << fmt::format("wrote {} points over [{}, {}] to {}\n",
                     curve.points.size(), Num(curve.points.front().tau0),
                     Num(curve.points.back().tau0), path);

  if (opt.active) {
    const JointPair& jp = *s.joint;
    const SweepRange ar = s.active_sweep.value_or(
        DefaultRange(jp.joint(), s.groups.priv, s.default_points));
    const PostCollectionCurve post =
        ComputePostCollectionCurve(jp, s.groups.priv, ar.lo, ar.hi, ar.points);
    if (post.curve.range_shrunk) {
      err << "warning: active sweep range clipped to the valid exponent "
             "interval\n";
    }
    if (post.joint_exceeds_priv) {
      err << "warning: after collection the unprivileged group is more "
             "separable than the privileged group\n";
    }
    const std::string apath = opt.out ? ActivePath(*opt.out) : s.active_out;
    WriteFile(apath, TradeoffCsv(post.curve));
    const SeparabilityGain gain = ComputeSeparabilityGain(jp);
    out << fmt::format("wrote {} points over [{}, {}] to {}\n",
                       post.curve.points.size(),
                       Num(post.curve.points.front().tau0),
                       Num(post.curve.points.back().tau0), apath);
    out << fmt::format("separability gain {} (C joint {}, C marginal {}), "
                       "conditional MI {}\n",
                       Num(gain.gain), Num(gain.c_joint), Num(gain.c_marginal),
                       Num(ConditionalMi(jp, s.groups.unpriv_labels)));
  }
  return exit_code::kOk;
}

void ReportRow(std::ostream& out, const std::string& group,
               const ExponentReport& r) {
  out << fmt::format("{:<14}{:>20}{:>20}{:>20}{:>20}\n", group, Num(r.tau),
                     Num(r.e_fp), Num(r.e_fn), Num(r.e_e));
}

int CmdFair(const Scenario& s, const CommandOptions& opt, std::ostream& out) {
  const FairSolution sol = opt.mode == FairMode::kBoth
                               ? SolveOptBoth(s.groups)
                               : SolveOptOne(s.groups);
  out << fmt::format("mode     {}\n", opt.mode == FairMode::kBoth ? "both"
                                                                   : "one");
  out << fmt::format("regime   {}\n", RegimeName(sol.regime));
  out << fmt::format("{:<14}{:>20}{:>20}{:>20}{:>20}\n", "group", "tau",
                     "e_fp", "e_fn", "e_e");
  ReportRow(out, "unprivileged", sol.report0);
  ReportRow(out, "privileged", sol.report1);
  out << fmt::format("objective     {}\n", Num(sol.objective));
  out << fmt::format("fairness_gap  {}\n",
                     Num(std::abs(sol.report0.e_fn - sol.report1.e_fn)));
  return exit_code::kOk;
}

std::string IdealDump(const IdealPair& ip) {
  std::string csv;
  if (ip.pair.backend() == Backend::kGrid) {
    const GridDistribution& neg = ip.pair.neg_grid();
    const GridDistribution& pos = ip.pair.pos_grid();
    csv = "x,neg,pos\n";
    for (std::size_t i = 0; i < neg.size(); ++i) {
      csv += Num(neg.support()[i]) + "," + Num(neg.mass()[i]) + "," +
             Num(pos.mass()[i]) + "\n";
    }
    return csv;
  }
  const GaussianDistribution& neg = ip.pair.neg_gaussian();
  const GaussianDistribution& pos = ip.pair.pos_gaussian();
  csv = "coordinate,neg_mean,pos_mean,variance\n";
  for (std::size_t i = 0; i < neg.dimension(); ++i) {
    csv += std::to_string(i) + "," + Num(neg.mean()[i]) + "," +
           Num(pos.mean()[i]) + "," + Num(neg.variance()) + "\n";
  }
  return csv;
}

int CmdIdeal(const Scenario& s, const CommandOptions& opt, std::ostream& out) {
  const IdealPair ip = opt.kl_min ? SolveKlMinimal(s.groups, s.kl_priors)
                                  : ConstructIdeal(s.groups, s.kl_priors);
  const IdealVerification v = VerifyIdeal(ip, s.groups.unpriv, s.groups.priv);
  const DecisionComparison d =
      CompareDecisions(ip, s.groups.unpriv, ip.fair_tau_equiv);
  const auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  out << fmt::format("construction        {}\n",
                     opt.kl_min ? "kl-minimal" : "v = 1");
  out << fmt::format("w                   {}\n", Num(ip.w));
  out << fmt::format("v                   {}\n", Num(ip.v));
  out << fmt::format("c_ideal             {}\n", Num(ip.c_ideal));
  out << fmt::format("kl_objective        {}\n", Num(ip.kl_objective));
  out << fmt::format("fair_tau_equiv      {}\n", Num(ip.fair_tau_equiv));
  out << fmt::format("fairness_on_given   {}  residual {}\n",
                     yes_no(v.fairness_on_given), Num(v.fairness_residual));
  out << fmt::format("accuracy_on_ideal   {}  residual {}\n",
                     yes_no(v.accuracy_on_ideal), Num(v.accuracy_residual));
  out << fmt::format(
      "detector_equivalent {}  scale {} implied_tau {} affine_residual {}\n",
      yes_no(v.detector_equivalent), Num(v.scale), Num(v.implied_tau),
      Num(v.affine_residual));
  out << fmt::format("decisions           {} points, {} mismatches, {} ties\n",
                     d.points, d.mismatches, d.boundary_ties);
  const std::string dump = opt.out.value_or(s.ideal_dump);
  if (!dump.empty()) {
    WriteFile(dump, IdealDump(ip));
    out << "wrote ideal pair to " << dump << '\n';
  }
  return exit_code::kOk;
}

// Chernoff exponent, or 0 (trivial bound) outside the valid interval.
template <typename F>
double ExponentOrZero(F&& f) {
  try {
    return f().value;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kThresholdOutOfRange) return 0.0;
    throw;
  }
}

int CmdValidate(const Scenario& s, const CommandOptions& opt,
                std::ostream& out) {
  const std::uint64_t seed = opt.seed.value_or(s.mc_seed);
  out << fmt::format("monte carlo: n = {} per hypothesis, seed = {}\n",
                     s.mc_samples, seed);
  out << fmt::format("{:<26}{:<6}{:>16}{:>16}{:>14}{:>16}{:>8}\n", "detector",
                     "rate", "closed_form", "monte_carlo", "ci95", "bound",
                     "flag");
  bool inconsistent = false;
  bool flagged = false;
  for (const DetectorSpec& spec : s.detectors) {
    const bool unpriv = spec.group == "unprivileged";
    const DistributionPair& pair = unpriv ? s.groups.unpriv : s.groups.priv;
    const Priors& priors =
        unpriv ? s.groups.unpriv_labels : s.groups.priv_labels;
    const Detector det{pair, spec.tau};
    const LgfContext ctx(pair);
    const double e_fp =
        ExponentOrZero([&] { return ChernoffExponentFp(ctx, spec.tau); });
    const double e_fn =
        ExponentOrZero([&] { return ChernoffExponentFn(ctx, spec.tau); });
    const ErrorRates exact = ComputeErrorRates(det, pair, priors);
    const ErrorRates mc =
        MonteCarloRates(det, pair, s.mc_samples, seed, priors);
    const double bounds[3] = {std::exp(-e_fp), std::exp(-e_fn),
                              std::exp(-std::min(e_fp, e_fn))};
    const double closed[3] = {exact.p_fp, exact.p_fn, exact.p_e};
    const double est[3] = {mc.p_fp, mc.p_fn, mc.p_e};
    const double ci[3] = {mc.ci_fp, mc.ci_fn, mc.ci_e};
    const char* names[3] = {"fp", "fn", "e"};
    const std::string label = fmt::format("{} tau={}", spec.group,
                                          Num(spec.tau));
    for (int k = 0; k < 3; ++k) {
      const bool bad_closed = closed[k] > bounds[k] * (1 + 1e-12);
      const bool bad_mc = est[k] - kMcCiWidths * ci[k] > bounds[k];
      inconsistent |= bad_closed;
      flagged |= bad_mc;
      out << fmt::format("{:<26}{:<6}{:>16.8g}{:>16.8g}{:>14.3g}{:>16.8g}{:>8}\n",
                         label, names[k], closed[k], est[k], ci[k], bounds[k],
                         bad_closed ? "BOUND" : (bad_mc ? "MC" : "ok"));
    }
  }
  if (flagged) {
    out << "note: a Monte Carlo estimate exceeds its bound by more than "
        << kMcCiWidths << " CI half-widths\n";
  }
  if (inconsistent) {
    throw Error(ErrorKind::kInternalInconsistency,
                "a closed-form error rate exceeds its Chernoff bound");
  }
  return exit_code::kOk;
}

}  // namespace

std::optional<Command> ParseCommand(std::string_view name) {
  if (name == "chernoff") return Command::kChernoff;
  if (name == "tradeoff") return Command::kTradeoff;
  if (name == "fair") return Command::kFair;
  if (name == "ideal") return Command::kIdeal;
  if (name == "validate") return Command::kValidate;
  return std::nullopt;
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDistribution:
    case ErrorKind::kNotDistinct:
    case ErrorKind::kBackendMismatch:
    case ErrorKind::kSupportMismatch:
    case ErrorKind::kNonFiniteNormalizer:
    case ErrorKind::kGroupOrderError:
    case ErrorKind::kInvalidArgument:
      return exit_code::kInvalidScenario;
    case ErrorKind::kNotBiasedScenario:
    case ErrorKind::kThresholdOutOfRange:
    case ErrorKind::kBackendUnsupported:
    case ErrorKind::kNegativeAdjustedExponent:
      return exit_code::kDegenerate;
    case ErrorKind::kInternalInconsistency:
      return exit_code::kInternal;
    case ErrorKind::kBracketFailure:
      return exit_code::kOtherFailure;
  }
  return exit_code::kOtherFailure;
}

std::string TradeoffCsv(const TradeoffCurve& curve) {
  std::string csv = "tau0,e_fp,e_fn,e_e,fairness_gap\n";
  for (const CurvePoint& p : curve.points) {
    csv += fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", p.tau0,
                       p.e_fp, p.e_fn, p.e_e, p.fairness_gap);
  }
  return csv;
}

int RunCommand(const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  try {
    const Scenario s = LoadScenario(options.scenario_path);
    PrintWarnings(s, err);
    switch (options.command) {
      case Command::kChernoff:
        return CmdChernoff(s, out);
      case Command::kTradeoff:
        return CmdTradeoff(s, options, out, err);
      case Command::kFair:
        return CmdFair(s, options, out);
      case Command::kIdeal:
        return CmdIdeal(s, options, out);
      case Command::kValidate:
        return CmdValidate(s, options, out);
    }
    return exit_code::kOtherFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kOtherFailure;
  }
}

}  // namespace cfair
