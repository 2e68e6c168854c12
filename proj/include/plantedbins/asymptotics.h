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

// Limiting total variation per regime, leading-order moments of the
// statistics, and Monte Carlo harnesses that check both.

#ifndef PLANTEDBINS_ASYMPTOTICS_H_
#define PLANTEDBINS_ASYMPTOTICS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "plantedbins/core_model.h"
#include "plantedbins/statistics.h"
#include "plantedbins/tv_engine.h"

namespace plantedbins {

// Phi(x) = erfc(-x / sqrt 2) / 2. std::erfc is accurate to a few ulp, well
// inside the 1e-7 absolute budget.
double StdNormalCdf(double x);

// Flat:          2 Phi(1 / (2 sqrt(2) c)) - 1
// Hilly:         2 Phi(1 / (2 sqrt(c))) - 1
// Intermediate:  2 Phi(sqrt(lambda/c + 1/(2c^2)) / 2) - 1
// Throws kInvalidScale unless c > 0.
double PredictedTv(const RegimeSpec& spec);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Leading-order mean and variance of sum a_i q_i^p:
//   p = 1:  ST (0, V n^2/m)                 PL (V n^2/m, V n^2/m)
//   p = 2:  ST (kn/m, 2k^2 n/m^2)           PL (kn/m - k^2 n/m^2, 2k^2 n/m^2)
//   p = 3:  (k n^2/m^2, 0) under both laws
//   p = 4:  (3k n^2/m^2, 0) under both laws
// The p = 3, 4 variances vanish only asymptotically and are reported as 0.
Moments PredictedMoments(const Planting& planting, Count m, int p, Law law);

// Moments used to standardize a decision statistic: H and F as above, and
//   I:  ST mean -kn/2m,  PL mean -kn/2m + k^2 n/2m^2 + V n^2/m,
//       variance V n^2/m + k^2 n/2m^2 under both laws.
// Throws kInvalidArgument for kPairs.
Moments PredictedStatisticMoments(const Planting& planting, Count m,
                                  StatisticKind kind, Law law);

struct MomentReport {
  int power = 1;
  Law law = Law::kSt;
  double predicted_mean = 0.0;
  double predicted_var = 0.0;
  double empirical_mean = 0.0;
  // Unbiased sample variance.
  double empirical_var = 0.0;
  int64_t samples = 0;
  double mean_stderr = 0.0;
};

// Draws `options.samples` configurations from `law` and returns fn(Z) for
// each, in sample order. Sample i comes from the stream
// (seed, side, i / kChunkSize) with side kStStream or kPlStream, the same
// streams the TV estimators use.
std::vector<double> MapSamples(
    const Planting& planting, Count m, Law law, const McOptions& options,
    const std::function<double(const Configuration&)>& fn);

// sum a_i q_i^p for each sample.
std::vector<double> SamplePowerSums(const Planting& planting, Count m, int p,
                                    Law law, const McOptions& options);

std::vector<double> SampleStatistic(const Planting& planting, Count m,
                                    StatisticKind kind, Law law,
                                    const McOptions& options);

MomentReport EmpiricalMoments(const Planting& planting, Count m, int p,
                              Law law, const McOptions& options);

// One-sample Kolmogorov-Smirnov distance between the empirical CDF of
// `values` and the standard normal CDF.
double KsStatisticStdNormal(std::span<const double> values);

inline constexpr double kDefaultKsThreshold = 0.03;

struct NormalityResult {
  double d = 0.0;
  double threshold = kDefaultKsThreshold;
  bool pass = false;
  int64_t samples = 0;
};

// Standardizes the statistic by PredictedStatisticMoments and passes iff the
// KS distance to N(0, 1) is below `threshold`. Needs samples >= 100; throws
// kDegenerateStandardization when the predicted variance is not positive.
NormalityResult KsNormality(const Planting& planting, Count m,
                            StatisticKind kind, Law law,
                            const McOptions& options,
                            double threshold = kDefaultKsThreshold);

struct ErrorTermReport {
  double asymptotic = 0.0;
  double exact_mean = 0.0;
  // Mean of |ErrorTermExact(Z) - asymptotic| over ST samples.
  double abs_gap_mean = 0.0;
  int64_t samples = 0;
  // Samples left out of both means because some planted bin was empty.
  int64_t undefined = 0;
};

// Compares ErrorTermExact on ST samples with ErrorTermAsymptotic. Throws
// kUndefinedErrorTerm if no sample has every planted bin occupied.
ErrorTermReport MeanErrorTermGap(const Planting& planting, Count m,
                                 const McOptions& options);

}  // namespace plantedbins

#endif  // PLANTEDBINS_ASYMPTOTICS_H_
