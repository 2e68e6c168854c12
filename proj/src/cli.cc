// Copyright 2026 The plantedbins Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plantedbins/cli.h"

#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "plantedbins/asymptotics.h"
#include "plantedbins/core_model.h"
#include "plantedbins/error.h"
#include "plantedbins/likelihood.h"
#include "plantedbins/planting_io.h"
#include "plantedbins/statistics.h"
#include "plantedbins/sweep.h"
#include "plantedbins/tv_engine.h"

namespace plantedbins {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string planting;
  std::optional<Count> n;
  std::optional<Count> m;
  std::optional<double> c;
  std::string regime;
  double lambda = 0.0;
  double flat_cutoff = kDefaultFlatCutoff;
  double hilly_cutoff = kDefaultHillyCutoff;
  Count max_m = kDefaultMaxM;
  int64_t enum_cap = kDefaultEnumerationCap;

  int64_t samples = 10'000;
  uint64_t seed = 1;
  int threads = 0;

  std::string method = "optimal";
  std::string stat;
  std::string dist = "st";
  int power = 1;
  double threshold = kDefaultKsThreshold;
  int digits = 4;
  std::vector<Count> z;

  std::vector<double> c_list;
  std::vector<std::string> methods = {"optimal"};
  std::string out_path;
  std::string format = "csv";
};

const std::vector<std::string> kRegimes = {"flat", "hilly", "intermediate"};
const std::vector<std::string> kStats = {"f", "h", "i"};

void AddPlanting(CLI::App* cmd, Args& args, bool required = true) {
  auto* opt = cmd->add_option(
      "--planting", args.planting,
      "flat:<k>, singlebin:<k>, file:<path> or a planting JSON path");
  if (required) opt->required();
  cmd->add_option("--n", args.n, "number of bins")
      ->check(CLI::PositiveNumber);
}

void AddCutoffs(CLI::App* cmd, Args& args) {
  cmd->add_option("--flat-cutoff", args.flat_cutoff,
                  "rho below this is classified flat")
      ->capture_default_str();
  cmd->add_option("--hilly-cutoff", args.hilly_cutoff,
                  "rho above this is classified hilly")
      ->capture_default_str();
}

void AddScale(CLI::App* cmd, Args& args) {
  auto* m = cmd->add_option("--m", args.m, "number of balls")
                ->check(CLI::NonNegativeNumber);
  auto* c = cmd->add_option("--c", args.c,
                            "scaling constant; m is derived from the regime")
                ->check(CLI::PositiveNumber);
  m->excludes(c);
  cmd->add_option("--regime", args.regime, "override the classified regime")
      ->check(CLI::IsMember(kRegimes));
  cmd->add_option("--max-m", args.max_m, "largest m allowed from --c")
      ->capture_default_str();
  AddCutoffs(cmd, args);
}

void AddMonteCarlo(CLI::App* cmd, Args& args, int64_t min_samples) {
  cmd->add_option("--samples", args.samples, "samples per distribution")
      ->check(CLI::Range(min_samples, std::numeric_limits<int64_t>::max()))
      ->capture_default_str();
  cmd->add_option("--seed", args.seed, "64-bit master seed")
      ->capture_default_str();
  cmd->add_option("--threads", args.threads,
                  "worker threads (0 = available parallelism)")
      ->envname("PLANTEDBINS_THREADS")
      ->check(CLI::NonNegativeNumber);
}

void WarnIfSmallK(const Planting& planting, std::ostream& err) {
  if (planting.k() > 0 && BelowAsymptoticRange(planting)) {
    err << "warning: k = " << planting.k() << " < 3 sqrt(n) for n = "
        << planting.n() << "; asymptotic predictions may not apply\n";
  }
}

RegimeSpec Classify(const Args& args, const Planting& planting) {
  RegimeSpec spec =
      ClassifyRegime(planting, args.flat_cutoff, args.hilly_cutoff);
  if (!args.regime.empty()) {
    spec.regime = ParseRegime(args.regime);
    spec.lambda = spec.rho;
  }
  return spec;
}

Count ResolveM(const Args& args, const Planting& planting, std::ostream& err) {
  if (args.m.has_value()) return *args.m;
  if (!args.c.has_value()) throw UsageError("one of --m or --c is required");
  RegimeSpec spec = Classify(args, planting);
  spec.c = *args.c;
  WarnIfSmallK(planting, err);
  return ScaleM(planting, spec, args.max_m);
}

StatisticKind ResolveStatistic(const Args& args, const Planting& planting) {
  if (!args.stat.empty()) return ParseStatistic(args.stat);
  return RegimeStatistic(Classify(args, planting).regime);
}

McOptions MonteCarloOptions(const Args& args) {
  McOptions options;
  options.samples = args.samples;
  options.seed = args.seed;
  options.threads = ResolveThreads(args.threads);
  return options;
}

Planting LoadPlanting(const Args& args) {
  return ResolvePlantingSource(args.planting, args.n);
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return buffer;
}

int CmdPredict(const Args& args, std::ostream& out, std::ostream& err) {
  RegimeSpec spec;
  if (!args.planting.empty()) {
    const Planting planting = LoadPlanting(args);
    spec = Classify(args, planting);
    WarnIfSmallK(planting, err);
  } else if (!args.regime.empty()) {
    spec.regime = ParseRegime(args.regime);
    spec.lambda = args.lambda;
  } else {
    throw UsageError("predict needs --regime or --planting");
  }
  spec.c = *args.c;
  out << Fixed(PredictedTv(spec), args.digits) << '\n';
  return kExitOk;
}

int CmdExactTv(const Args& args, std::ostream& out, std::ostream& err) {
  const Planting planting = LoadPlanting(args);
  const Count m = ResolveM(args, planting, err);
  out << FormatRoundTrip(ExactTv(planting, m, args.enum_cap).value) << '\n';
  return kExitOk;
}

int CmdMcTv(const Args& args, std::ostream& out, std::ostream& err) {
  const Planting planting = LoadPlanting(args);
  const Count m = ResolveM(args, planting, err);
  const McOptions options = MonteCarloOptions(args);
  TvEstimate estimate;
  std::string stat = "lr";
  if (args.method == "optimal") {
    estimate = McTvOptimal(planting, m, options);
  } else {
    const StatisticKind kind = ResolveStatistic(args, planting);
    estimate = McTvStrategy(planting, m, kind, options);
    stat = std::string(StatisticName(kind));
  }
  out << "m,n,k,method,stat,tv,stderr,samples,seed\n"
      << m << ',' << planting.n() << ',' << planting.k() << ','
      << TvMethodName(estimate.method) << ',' << stat << ','
      << FormatRoundTrip(estimate.value) << ','
      << FormatRoundTrip(estimate.standard_error) << ','
      << estimate.samples_per_side << ',' << estimate.seed << '\n';
  return kExitOk;
}

int CmdMoments(const Args& args, std::ostream& out, std::ostream& err) {
  const Planting planting = LoadPlanting(args);
  const Count m = ResolveM(args, planting, err);
  const MomentReport r = EmpiricalMoments(planting, m, args.power,
                                          ParseLaw(args.dist),
                                          MonteCarloOptions(args));
  out << "m,n,k,power,dist,predicted_mean,predicted_var,empirical_mean,"
         "empirical_var,samples,mean_stderr,seed\n"
      << m << ',' << planting.n() << ',' << planting.k() << ',' << r.power
      << ',' << LawName(r.law) << ',' << FormatRoundTrip(r.predicted_mean)
      << ',' << FormatRoundTrip(r.predicted_var) << ','
      << FormatRoundTrip(r.empirical_mean) << ','
      << FormatRoundTrip(r.empirical_var) << ',' << r.samples << ','
      << FormatRoundTrip(r.mean_stderr) << ',' << args.seed << '\n';
  return kExitOk;
}

int CmdNormality(const Args& args, std::ostream& out, std::ostream& err) {
  const Planting planting = LoadPlanting(args);
  const Count m = ResolveM(args, planting, err);
  const StatisticKind kind = ResolveStatistic(args, planting);
  const NormalityResult r =
      KsNormality(planting, m, kind, ParseLaw(args.dist),
                  MonteCarloOptions(args), args.threshold);
  out << "m,n,k,stat,dist,D,threshold,pass,samples,seed\n"
      << m << ',' << planting.n() << ',' << planting.k() << ','
      << StatisticName(kind) << ',' << args.dist << ','
      << FormatRoundTrip(r.d) << ',' << FormatRoundTrip(r.threshold) << ','
      << (r.pass ? "true" : "false") << ',' << r.samples << ',' << args.seed
      << '\n';
  return kExitOk;
}

int CmdErrorTerm(const Args& args, std::ostream& out, std::ostream& err) {
  const Planting planting = LoadPlanting(args);
  if (!args.z.empty()) {
    const Configuration config(args.z);
    if (args.m.has_value() && *args.m != config.m()) {
      throw UsageError("--m disagrees with the sum of --z");
    }
    const LogRatio ratio = ComputeLogRatio(planting, config);
    out << "m,n,k,exact,asymptotic,log_ratio,log_ratio_expansion\n"
        << config.m() << ',' << planting.n() << ',' << planting.k() << ','
        << FormatRoundTrip(ErrorTermExact(planting, config)) << ','
        << FormatRoundTrip(ErrorTermAsymptotic(planting, config.m())) << ','
        << (ratio.is_finite() ? FormatRoundTrip(ratio.value()) : "-inf")
        << ',' << FormatRoundTrip(LogRatioExpansion(planting, config))
        << '\n';
    return kExitOk;
  }
  const Count m = ResolveM(args, planting, err);
  const ErrorTermReport r =
      MeanErrorTermGap(planting, m, MonteCarloOptions(args));
  out << "m,n,k,asymptotic,exact_mean,abs_gap_mean,samples,undefined,seed\n"
      << m << ',' << planting.n() << ',' << planting.k() << ','
      << FormatRoundTrip(r.asymptotic) << ',' << FormatRoundTrip(r.exact_mean)
      << ',' << FormatRoundTrip(r.abs_gap_mean) << ',' << r.samples << ','
      << r.undefined << ',' << args.seed << '\n';
  return kExitOk;
}

int CmdSweep(const Args& args, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.planting_source = args.planting;
  spec.n = args.n;
  if (!args.regime.empty()) spec.regime_override = ParseRegime(args.regime);
  spec.c_values = args.c_list;
  spec.samples = args.samples;
  spec.seed = args.seed;
  spec.methods.clear();
  for (const std::string& method : args.methods) {
    if (method == "exact") {
      spec.methods.push_back(TvMethod::kExact);
    } else if (method == "optimal") {
      spec.methods.push_back(TvMethod::kMcOptimal);
    } else {
      spec.methods.push_back(TvMethod::kMcStrategy);
    }
  }
  if (!args.stat.empty()) spec.strategy_statistic = ParseStatistic(args.stat);
  spec.output_path = args.out_path;
  spec.format = args.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  spec.flat_cutoff = args.flat_cutoff;
  spec.hilly_cutoff = args.hilly_cutoff;
  spec.max_m = args.max_m;
  spec.enumeration_cap = args.enum_cap;
  spec.threads = ResolveThreads(args.threads);

  try {
    ValidateSweepSpec(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Planting planting = ResolvePlantingSource(spec.planting_source, spec.n);
  WarnIfSmallK(planting, err);
  const std::vector<SweepRow> rows = RunSweep(spec, planting);

  std::ostringstream table;
  if (spec.format == OutputFormat::kJson) {
    WriteSweepJson(rows, table);
  } else {
    WriteSweepCsv(rows, table);
  }
  if (spec.output_path.empty()) {
    out << table.str();
  } else {
    std::ofstream file(spec.output_path, std::ios::binary);
    if (!file) {
      throw Error(ErrorCode::kIoError,
                  "cannot open '" + spec.output_path + "' for writing");
    }
    file << table.str();
    if (!file.flush()) {
      throw Error(ErrorCode::kIoError, "write to '" + spec.output_path +
                                           "' failed");
    }
    err << "wrote " << rows.size() << " rows to " << spec.output_path << '\n';
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args_in, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Planted balls-and-bins: total variation between the uniform "
               "and planted occupancy laws",
               "plantedbins"};
  app.require_subcommand(1);
  Args args;

  auto* predict =
      app.add_subcommand("predict", "limiting TV for a regime and scale c");
  predict->add_option("--regime", args.regime, "flat, hilly or intermediate")
      ->check(CLI::IsMember(kRegimes));
  predict->add_option("--c", args.c, "scaling constant")
      ->required()
      ->check(CLI::PositiveNumber);
  predict->add_option("--lambda", args.lambda,
                      "intermediate-regime constant (without --planting)")
      ->check(CLI::NonNegativeNumber);
  predict->add_option("--digits", args.digits, "significant digits")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  AddPlanting(predict, args, /*required=*/false);
  AddCutoffs(predict, args);

  auto* exact_tv =
      app.add_subcommand("exact-tv", "TV by enumerating all configurations");
  AddPlanting(exact_tv, args);
  AddScale(exact_tv, args);
  exact_tv->add_option("--enum-cap", args.enum_cap,
                       "largest number of configurations to enumerate")
      ->capture_default_str();

  auto* mc_tv = app.add_subcommand("mc-tv", "Monte Carlo TV estimate");
  AddPlanting(mc_tv, args);
  AddScale(mc_tv, args);
  AddMonteCarlo(mc_tv, args, 2);
  mc_tv->add_option("--method", args.method, "optimal or strategy")
      ->check(CLI::IsMember({"optimal", "strategy"}))
      ->capture_default_str();
  mc_tv->add_option("--stat", args.stat,
                    "strategy statistic (default: the regime's)")
      ->check(CLI::IsMember(kStats));

  auto* moments = app.add_subcommand(
      "moments", "predicted vs empirical moments of sum a_i q_i^p");
  AddPlanting(moments, args);
  AddScale(moments, args);
  AddMonteCarlo(moments, args, 2);
  moments->add_option("--power", args.power, "p in 1..4")
      ->required()
      ->check(CLI::Range(1, 4));
  moments->add_option("--dist", args.dist, "st or pl")
      ->check(CLI::IsMember({"st", "pl"}))
      ->capture_default_str();

  auto* normality = app.add_subcommand(
      "normality", "KS distance of the standardized statistic to N(0,1)");
  AddPlanting(normality, args);
  AddScale(normality, args);
  AddMonteCarlo(normality, args, 100);
  normality->add_option("--stat", args.stat, "f, h or i (default: regime's)")
      ->check(CLI::IsMember(kStats));
  normality->add_option("--dist", args.dist, "st or pl")
      ->check(CLI::IsMember({"st", "pl"}))
      ->capture_default_str();
  normality->add_option("--threshold", args.threshold, "KS pass threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* error_term = app.add_subcommand(
      "error-term", "exact vs asymptotic ln(E1 E2) correction term");
  AddPlanting(error_term, args);
  AddScale(error_term, args);
  AddMonteCarlo(error_term, args, 1);
  error_term->add_option("--z", args.z,
                         "evaluate one configuration instead of sampling")
      ->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "TV-versus-c table");
  AddPlanting(sweep, args);
  sweep->add_option("--c", args.c_list, "comma-separated scaling constants")
      ->required()
      ->delimiter(',');
  sweep->add_option("--regime", args.regime, "override the classified regime")
      ->check(CLI::IsMember(kRegimes));
  sweep->add_option("--methods", args.methods,
                    "comma-separated subset of exact,optimal,strategy")
      ->delimiter(',')
      ->check(CLI::IsMember({"exact", "optimal", "strategy"}));
  sweep->add_option("--stat", args.stat, "strategy statistic")
      ->check(CLI::IsMember(kStats));
  sweep->add_option("--out", args.out_path, "output file (default: stdout)");
  sweep->add_option("--format", args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--max-m", args.max_m, "largest m allowed")
      ->capture_default_str();
  sweep->add_option("--enum-cap", args.enum_cap,
                    "largest number of configurations to enumerate")
      ->capture_default_str();
  AddCutoffs(sweep, args);
  AddMonteCarlo(sweep, args, 2);

  std::vector<const char*> argv;
  argv.reserve(args_in.size());
  for (const std::string& a : args_in) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*predict) return CmdPredict(args, out, err);
    if (*exact_tv) return CmdExactTv(args, out, err);
    if (*mc_tv) return CmdMcTv(args, out, err);
    if (*moments) return CmdMoments(args, out, err);
    if (*normality) return CmdNormality(args, out, err);
    if (*error_term) return CmdErrorTerm(args, out, err);
    if (*sweep) return CmdSweep(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace plantedbins
