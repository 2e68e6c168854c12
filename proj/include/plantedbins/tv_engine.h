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

// Total variation distance between ST and PL.
//
// ExactTv enumerates every configuration and is the ground truth on small
// instances. The Monte Carlo estimators use the identity
//
//   TV = ST(S) - PL(S),   S = {Z : ST(Z) >= PL(Z)}
//
// with independent sample pools for ST and PL. Replacing S by the ST-decision
// region of a threshold test gives the strategy estimate TV', which can only
// be smaller in expectation.

#ifndef PLANTEDBINS_TV_ENGINE_H_
#define PLANTEDBINS_TV_ENGINE_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "plantedbins/core_model.h"
#include "plantedbins/statistics.h"

namespace plantedbins {

enum class TvMethod { kExact, kMcOptimal, kMcStrategy };

std::string_view TvMethodName(TvMethod method);

struct TvEstimate {
  // MC estimates are not clamped and can dip slightly below 0.
  double value = 0.0;
  double standard_error = 0.0;
  TvMethod method = TvMethod::kExact;
  // Set for kMcStrategy only.
  std::optional<StatisticKind> statistic;
  int64_t samples_per_side = 0;
  uint64_t seed = 0;
};

inline constexpr int64_t kDefaultEnumerationCap = 10'000'000;

// C(m + n - 1, n - 1), saturating at UINT64_MAX.
uint64_t CompositionCount(Count n, Count m);

// Every weak composition of m into n parts, once each. The first part counts
// up slowest: for n = 2, m = 2 the order is (0,2), (1,1), (2,0).
class CompositionEnumerator {
 public:
  // Throws kEnumerationTooLarge when CompositionCount(n, m) > cap.
  CompositionEnumerator(Count n, Count m,
                        int64_t cap = kDefaultEnumerationCap);

  // Advances to the next composition; false once exhausted. The first call
  // yields the first composition.
  bool Next();

  const std::vector<Count>& current() const { return z_; }
  Configuration configuration() const { return Configuration(z_); }

 private:
  std::vector<Count> z_;
  Count m_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Configuration> EnumerateConfigurations(
    Count n, Count m, int64_t cap = kDefaultEnumerationCap);

// (1/2) sum_Z |ST(Z) - PL(Z)| over all configurations.
TvEstimate ExactTv(const Planting& planting, Count m,
                   int64_t cap = kDefaultEnumerationCap);

struct McOptions {
  int64_t samples = 10'000;  // per side, >= 2
  uint64_t seed = 0;
  int threads = 1;
};

// Region S = {Z : ln PL(Z)/ST(Z) <= 0}.
TvEstimate McTvOptimal(const Planting& planting, Count m,
                       const McOptions& options);

// Region D = {Z : StrategyDecide(statistic(Z), ThresholdMu(...)) == ST}.
// Throws kNoThresholdDefined for kPairs.
TvEstimate McTvStrategy(const Planting& planting, Count m, StatisticKind kind,
                        const McOptions& options);

// Stream path components; shared with the moment and normality harnesses so
// that equal seeds draw equal samples.
inline constexpr uint64_t kStStream = 0;
inline constexpr uint64_t kPlStream = 1;

}  // namespace plantedbins

#endif  // PLANTEDBINS_TV_ENGINE_H_
