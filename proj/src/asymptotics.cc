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

#include "plantedbins/asymptotics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "plantedbins/error.h"
#include "plantedbins/likelihood.h"
#include "plantedbins/numeric.h"
#include "plantedbins/random.h"

namespace plantedbins {
namespace {

void CheckSamples(int64_t samples, int64_t minimum) {
  if (samples < minimum) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least " + std::to_string(minimum) +
                    " samples, got " + std::to_string(samples));
  }
}

void CheckLaw(const Planting& planting, Count m, Law law) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  if (law == Law::kPl && m < planting.k()) {
    throw Error(ErrorCode::kNotEnoughBalls,
                "m = " + std::to_string(m) + " < k = " +
                    std::to_string(planting.k()));
  }
}

}  // namespace

std::vector<double> MapSamples(
    const Planting& planting, Count m, Law law, const McOptions& options,
    const std::function<double(const Configuration&)>& fn) {
  std::vector<double> values(static_cast<size_t>(options.samples));
  const uint64_t side = law == Law::kSt ? kStStream : kPlStream;
  ParallelChunks(ChunkCount(options.samples), options.threads,
                 [&](int64_t chunk) {
                   const int64_t begin = chunk * kChunkSize;
                   const int64_t end =
                       std::min(options.samples, begin + kChunkSize);
                   RandomStream stream = MakeStream(
                       options.seed, {side, static_cast<uint64_t>(chunk)});
                   for (int64_t s = begin; s < end; ++s) {
                     values[static_cast<size_t>(s)] =
                         fn(law == Law::kSt
                                ? SampleSt(planting.n(), m, stream)
                                : SamplePl(planting, m, stream));
                   }
                 });
  return values;
}

double StdNormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double PredictedTv(const RegimeSpec& spec) {
  const double c = spec.c;
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidScale, "scaling constant c must be > 0");
  }
  double z = 0.0;
  switch (spec.regime) {
    case Regime::kFlat:
      z = 1.0 / (2.0 * std::numbers::sqrt2 * c);
      break;
    case Regime::kHilly:
      z = 1.0 / (2.0 * std::sqrt(c));
      break;
    case Regime::kIntermediate:
      if (spec.lambda < 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
      }
      z = 0.5 * std::sqrt(spec.lambda / c + 1.0 / (2.0 * c * c));
      break;
  }
  return 2.0 * StdNormalCdf(z) - 1.0;
}

Moments PredictedMoments(const Planting& planting, Count m, int p, Law law) {
  if (p < 1 || p > 4) {
    throw Error(ErrorCode::kUnsupportedPower,
                "power must be in 1..4, got " + std::to_string(p));
  }
  CheckLaw(planting, m, law);
  const double n = static_cast<double>(planting.n());
  const double k = static_cast<double>(planting.k());
  const double md = static_cast<double>(m);
  const double v = PlantingVariance(planting);
  const bool st = law == Law::kSt;
  switch (p) {
    case 1: {
      const double spread = v * n * n / md;
      return {st ? 0.0 : spread, spread};
    }
    case 2: {
      const double mean = k * n / md - (st ? 0.0 : k * k * n / (md * md));
      return {mean, 2.0 * k * k * n / (md * md)};
    }
    case 3:
      return {k * n * n / (md * md), 0.0};
    default:
      return {3.0 * k * n * n / (md * md), 0.0};
  }
}

Moments PredictedStatisticMoments(const Planting& planting, Count m,
                                  StatisticKind kind, Law law) {
  switch (kind) {
    case StatisticKind::kHillyH:
      return PredictedMoments(planting, m, 1, law);
    case StatisticKind::kFlatF:
      return PredictedMoments(planting, m, 2, law);
    case StatisticKind::kIntermediateI: {
      CheckLaw(planting, m, law);
      const double n = static_cast<double>(planting.n());
      const double k = static_cast<double>(planting.k());
      const double md = static_cast<double>(m);
      const double v = PlantingVariance(planting);
      double mean = -k * n / (2.0 * md);
      if (law == Law::kPl) {
        mean += k * k * n / (2.0 * md * md) + v * n * n / md;
      }
      return {mean, v * n * n / md + k * k * n / (2.0 * md * md)};
    }
    case StatisticKind::kPairs:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no predicted moments for the pairs statistic");
}

std::vector<double> SamplePowerSums(const Planting& planting, Count m, int p,
                                    Law law, const McOptions& options) {
  if (p < 1 || p > 4) {
    throw Error(ErrorCode::kUnsupportedPower,
                "power must be in 1..4, got " + std::to_string(p));
  }
  CheckLaw(planting, m, law);
  return MapSamples(planting, m, law, options,
                      [&](const Configuration& z) {
                        return StatPowerSum(planting, z, p);
                      });
}

std::vector<double> SampleStatistic(const Planting& planting, Count m,
                                    StatisticKind kind, Law law,
                                    const McOptions& options) {
  CheckLaw(planting, m, law);
  return MapSamples(planting, m, law, options,
                      [&](const Configuration& z) {
                        return EvaluateStatistic(kind, planting, z);
                      });
}

MomentReport EmpiricalMoments(const Planting& planting, Count m, int p,
                              Law law, const McOptions& options) {
  CheckSamples(options.samples, 2);
  const Moments predicted = PredictedMoments(planting, m, p, law);
  const std::vector<double> values =
      SamplePowerSums(planting, m, p, law, options);

  // Welford, in sample order.
  double mean = 0.0;
  double m2 = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double delta = values[i] - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (values[i] - mean);
  }
  MomentReport report;
  report.power = p;
  report.law = law;
  report.predicted_mean = predicted.mean;
  report.predicted_var = predicted.variance;
  report.empirical_mean = mean;
  report.empirical_var =
      std::max(0.0, m2 / static_cast<double>(values.size() - 1));
  report.samples = options.samples;
  report.mean_stderr =
      std::sqrt(report.empirical_var / static_cast<double>(options.samples));
  return report;
}

double KsStatisticStdNormal(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "KS statistic of no samples");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = StdNormalCdf(sorted[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, cdf - below, above - cdf});
  }
  return d;
}

NormalityResult KsNormality(const Planting& planting, Count m,
                            StatisticKind kind, Law law,
                            const McOptions& options, double threshold) {
  CheckSamples(options.samples, 100);
  const Moments predicted = PredictedStatisticMoments(planting, m, kind, law);
  if (!(predicted.variance > 0.0)) {
    throw Error(ErrorCode::kDegenerateStandardization,
                "predicted variance of statistic '" +
                    std::string(StatisticName(kind)) + "' is zero");
  }
  std::vector<double> values =
      SampleStatistic(planting, m, kind, law, options);
  const double scale = std::sqrt(predicted.variance);
  for (double& v : values) v = (v - predicted.mean) / scale;

  NormalityResult result;
  result.d = KsStatisticStdNormal(values);
  result.threshold = threshold;
  result.pass = result.d < threshold;
  result.samples = options.samples;
  return result;
}

ErrorTermReport MeanErrorTermGap(const Planting& planting, Count m,
                                 const McOptions& options) {
  CheckSamples(options.samples, 1);
  CheckLaw(planting, m, Law::kSt);
  ErrorTermReport report;
  report.asymptotic = ErrorTermAsymptotic(planting, m);
  report.samples = options.samples;
  const std::vector<double> exact =
      MapSamples(planting, m, Law::kSt, options, [&](const Configuration& z) {
        for (Count i = 0; i < z.n(); ++i) {
          if (planting[i] > 0 && z[i] < planting[i]) {
            return std::numeric_limits<double>::quiet_NaN();
          }
        }
        return ErrorTermExact(planting, z);
      });
  CompensatedSum exact_sum;
  CompensatedSum gap_sum;
  for (double e : exact) {
    if (std::isnan(e)) {
      ++report.undefined;
      continue;
    }
    exact_sum += e;
    gap_sum += std::fabs(e - report.asymptotic);
  }
  const int64_t used = report.samples - report.undefined;
  if (used == 0) {
    throw Error(ErrorCode::kUndefinedErrorTerm,
                "every sample left a planted bin empty");
  }
  report.exact_mean = exact_sum.Value() / static_cast<double>(used);
  report.abs_gap_mean = gap_sum.Value() / static_cast<double>(used);
  return report;
}

}  // namespace plantedbins
