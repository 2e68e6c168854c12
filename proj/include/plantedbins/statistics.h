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

// Occupancy deviations and the threshold tests built on them.
//
// With q_i = (n/m)(z_i - m/n) the statistics are
//
//   F = sum a_i q_i^2        (flat plantings)
//   H = sum a_i q_i          (hilly plantings)
//   I = H - F/2              (intermediate plantings)
//
// Each threshold sits halfway between the statistic's ST and PL means.

#ifndef PLANTEDBINS_STATISTICS_H_
#define PLANTEDBINS_STATISTICS_H_

#include <string_view>
#include <vector>

#include "plantedbins/core_model.h"

namespace plantedbins {

enum class StatisticKind { kPairs, kFlatF, kHillyH, kIntermediateI };

// "pairs", "f", "h", "i".
std::string_view StatisticName(StatisticKind kind);
StatisticKind ParseStatistic(std::string_view name);

// The statistic matched to a regime: Flat -> F, Hilly -> H,
// Intermediate -> I.
StatisticKind RegimeStatistic(Regime regime);

enum class Direction { kChooseStIfAtLeast, kChoosePlIfAtLeast };
enum class Decision { kSt, kPl };

struct ThresholdSpec {
  StatisticKind kind = StatisticKind::kFlatF;
  double mu = 0.0;
  Direction direction = Direction::kChooseStIfAtLeast;
};

// q_i = (n z_i - m) / m with an exact integer numerator. Throws
// kUndefinedForEmpty when m == 0.
std::vector<double> QValues(const Configuration& config);

// sum C(z_i, 2), exact. Throws kArithmeticOverflow past 64 bits.
Count StatPairs(const Configuration& config);

double StatF(const Planting& planting, const Configuration& config);
// Evaluated as (n sum a_i z_i - k m) / m, so the result is exact whenever it
// is representable (in particular 0 for constant plantings).
double StatH(const Planting& planting, const Configuration& config);
double StatI(const Planting& planting, const Configuration& config);

// sum a_i q_i^p for p in 1..4; p = 1 is StatH and p = 2 is StatF.
double StatPowerSum(const Planting& planting, const Configuration& config,
                    int p);

// Dispatches on kind. kPairs ignores the planting.
double EvaluateStatistic(StatisticKind kind, const Planting& planting,
                         const Configuration& config);

// mu_F = kn/m - k^2 n / 2m^2        (choose ST iff F >= mu_F)
// mu_H = V n^2 / 2m                  (choose PL iff H >= mu_H)
// mu_I = -kn/2m + k^2 n/4m^2 + V n^2/2m   (choose PL iff I >= mu_I)
// Throws kNoThresholdDefined for kPairs.
ThresholdSpec ThresholdMu(const Planting& planting, Count m,
                          StatisticKind kind);

// Ties go to the "at least" branch.
Decision StrategyDecide(double value, const ThresholdSpec& spec);

}  // namespace plantedbins

#endif  // PLANTEDBINS_STATISTICS_H_
