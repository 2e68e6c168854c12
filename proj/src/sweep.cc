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

#include "plantedbins/sweep.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "plantedbins/asymptotics.h"
#include "plantedbins/error.h"
#include "plantedbins/planting_io.h"
#include "plantedbins/random.h"

namespace plantedbins {
namespace {

struct Job {
  size_t c_index = 0;
  TvMethod method = TvMethod::kExact;
};

std::string RowStat(const SweepRow& row, std::optional<StatisticKind> kind) {
  switch (row.method) {
    case TvMethod::kExact:
      return "none";
    case TvMethod::kMcOptimal:
      return "lr";
    case TvMethod::kMcStrategy:
      return std::string(StatisticName(*kind));
  }
  return "none";
}

}  // namespace

std::string FormatRoundTrip(double value) {
  std::array<char, 64> buffer;
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

void ValidateSweepSpec(const SweepSpec& spec) {
  if (spec.c_values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one c");
  }
  for (double c : spec.c_values) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "c values must be positive, got " + FormatRoundTrip(c));
    }
  }
  if (spec.samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs samples >= 2");
  }
  if (spec.methods.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one method");
  }
}

std::vector<SweepRow> RunSweep(const SweepSpec& spec) {
  ValidateSweepSpec(spec);
  const Planting planting = ResolvePlantingSource(spec.planting_source, spec.n);
  return RunSweep(spec, planting);
}

std::vector<SweepRow> RunSweep(const SweepSpec& spec,
                               const Planting& planting) {
  ValidateSweepSpec(spec);
  RegimeSpec base =
      ClassifyRegime(planting, spec.flat_cutoff, spec.hilly_cutoff);
  if (spec.regime_override.has_value()) {
    base.regime = *spec.regime_override;
    base.lambda = base.rho;
  }
  const StatisticKind strategy_kind =
      spec.strategy_statistic.value_or(RegimeStatistic(base.regime));

  std::vector<double> cs = spec.c_values;
  std::sort(cs.begin(), cs.end());
  std::vector<TvMethod> methods = spec.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  // Per-c setup is cheap and can fail (ScaleTooLarge), so do it up front.
  std::vector<SweepRow> templates;
  for (size_t i = 0; i < cs.size(); ++i) {
    RegimeSpec regime = base;
    regime.c = cs[i];
    SweepRow row;
    row.c = cs[i];
    row.m = ScaleM(planting, regime, spec.max_m);
    row.n = planting.n();
    row.k = planting.k();
    row.v = PlantingVariance(planting);
    row.regime = regime.regime;
    row.rho = regime.rho;
    row.tv_predicted = PredictedTv(regime);
    row.seed = DeriveSeed(spec.seed, {static_cast<uint64_t>(i)});
    templates.push_back(row);
  }

  std::vector<Job> jobs;
  for (size_t i = 0; i < cs.size(); ++i) {
    for (TvMethod method : methods) jobs.push_back({i, method});
  }

  const int threads = std::max(spec.threads, 1);
  const int64_t job_count = static_cast<int64_t>(jobs.size());
  const int inner_threads =
      std::max(1, threads / static_cast<int>(std::min<int64_t>(
                                threads, job_count)));

  std::vector<SweepRow> rows(jobs.size());
  ParallelChunks(job_count, threads, [&](int64_t j) {
    const Job& job = jobs[static_cast<size_t>(j)];
    SweepRow row = templates[job.c_index];
    row.method = job.method;
    McOptions options;
    options.samples = spec.samples;
    options.seed = row.seed;
    options.threads = inner_threads;

    TvEstimate estimate;
    switch (job.method) {
      case TvMethod::kExact:
        estimate = ExactTv(planting, row.m, spec.enumeration_cap);
        break;
      case TvMethod::kMcOptimal:
        estimate = McTvOptimal(planting, row.m, options);
        break;
      case TvMethod::kMcStrategy:
        estimate = McTvStrategy(planting, row.m, strategy_kind, options);
        break;
    }
    row.tv = estimate.value;
    row.standard_error = estimate.standard_error;
    row.samples = estimate.samples_per_side;
    row.stat = RowStat(row, strategy_kind);
    if (job.method == TvMethod::kExact) row.seed = 0;
    rows[static_cast<size_t>(j)] = std::move(row);
  });
  return rows;
}

void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << FormatRoundTrip(r.c) << ',' << r.m << ',' << r.n << ',' << r.k
        << ',' << FormatRoundTrip(r.v) << ',' << RegimeName(r.regime) << ','
        << FormatRoundTrip(r.rho) << ',' << TvMethodName(r.method) << ','
        << r.stat << ',' << FormatRoundTrip(r.tv) << ','
        << FormatRoundTrip(r.standard_error) << ','
        << FormatRoundTrip(r.tv_predicted) << ',' << r.samples << ','
        << r.seed << '\n';
  }
}

nlohmann::ordered_json SweepRowToJson(const SweepRow& r) {
  nlohmann::ordered_json j;
  j["c"] = r.c;
  j["m"] = r.m;
  j["n"] = r.n;
  j["k"] = r.k;
  j["V"] = r.v;
  j["regime"] = RegimeName(r.regime);
  j["rho"] = r.rho;
  j["method"] = TvMethodName(r.method);
  j["stat"] = r.stat;
  j["tv"] = r.tv;
  j["stderr"] = r.standard_error;
  j["tv_predicted"] = r.tv_predicted;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  return j;
}

void WriteSweepJson(const std::vector<SweepRow>& rows, std::ostream& out) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) array.push_back(SweepRowToJson(r));
  out << array.dump(2) << '\n';
}

}  // namespace plantedbins
