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

// TV-versus-c sweeps and their CSV/JSON tables.
//
// CSV schema (version 1), one row per (c, method), rows ordered by c then
// method (exact, optimal, strategy):
//
//   c,m,n,k,V,regime,rho,method,stat,tv,stderr,tv_predicted,samples,seed
//
// `stat` is "none" for exact rows, "lr" for the likelihood-ratio test and
// f/h/i for strategy rows. `samples` is 0 for exact rows. `seed` is the seed
// the row's estimator actually used, so `mc-tv --seed` reproduces a row.
// Reals are written in shortest round-trip form.

#ifndef PLANTEDBINS_SWEEP_H_
#define PLANTEDBINS_SWEEP_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "plantedbins/core_model.h"
#include "plantedbins/statistics.h"
#include "plantedbins/tv_engine.h"

namespace plantedbins {

enum class OutputFormat { kCsv, kJson };

struct SweepSpec {
  std::string planting_source;
  std::optional<Count> n;
  std::optional<Regime> regime_override;
  std::vector<double> c_values;
  int64_t samples = 10'000;
  uint64_t seed = 0;
  std::vector<TvMethod> methods = {TvMethod::kMcOptimal};
  // Statistic for strategy rows; defaults to the regime's statistic.
  std::optional<StatisticKind> strategy_statistic;
  std::string output_path;  // empty means standard output
  OutputFormat format = OutputFormat::kCsv;

  double flat_cutoff = kDefaultFlatCutoff;
  double hilly_cutoff = kDefaultHillyCutoff;
  Count max_m = kDefaultMaxM;
  int64_t enumeration_cap = kDefaultEnumerationCap;
  int threads = 1;
};

struct SweepRow {
  double c = 0.0;
  Count m = 0;
  Count n = 0;
  Count k = 0;
  double v = 0.0;
  Regime regime = Regime::kFlat;
  double rho = 0.0;
  TvMethod method = TvMethod::kExact;
  std::string stat;
  double tv = 0.0;
  double standard_error = 0.0;
  double tv_predicted = 0.0;
  int64_t samples = 0;
  uint64_t seed = 0;
};

inline constexpr std::string_view kSweepCsvHeader =
    "c,m,n,k,V,regime,rho,method,stat,tv,stderr,tv_predicted,samples,seed";

// Throws kInvalidArgument on an empty or non-positive c list, samples < 2 or
// no methods.
void ValidateSweepSpec(const SweepSpec& spec);

std::vector<SweepRow> RunSweep(const SweepSpec& spec,
                               const Planting& planting);

// Loads the planting from spec.planting_source first.
std::vector<SweepRow> RunSweep(const SweepSpec& spec);

void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out);
void WriteSweepJson(const std::vector<SweepRow>& rows, std::ostream& out);

nlohmann::ordered_json SweepRowToJson(const SweepRow& row);

// Shortest decimal string that parses back to exactly `value`.
std::string FormatRoundTrip(double value);

}  // namespace plantedbins

#endif  // PLANTEDBINS_SWEEP_H_
