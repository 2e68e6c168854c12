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

// Plantings, configurations and the two laws on configurations of m balls in
// n labeled bins:
//
//   ST: every ball lands in a uniformly chosen bin.
//   PL: the planting a = (a_1, ..., a_n) with k = sum a_i balls is placed
//       first, then the remaining m - k balls are thrown uniformly.

#ifndef PLANTEDBINS_CORE_MODEL_H_
#define PLANTEDBINS_CORE_MODEL_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "plantedbins/random.h"

namespace plantedbins {

using Count = int64_t;
using WideCount = unsigned __int128;

class Planting {
 public:
  // Throws Error(kInvalidPlanting) when `a` is empty or has a negative entry.
  explicit Planting(std::vector<Count> a);

  std::span<const Count> a() const { return a_; }
  Count operator[](size_t i) const { return a_[i]; }
  Count k() const { return k_; }
  Count n() const { return static_cast<Count>(a_.size()); }

  friend bool operator==(const Planting&, const Planting&) = default;

 private:
  std::vector<Count> a_;
  Count k_ = 0;
};

class Configuration {
 public:
  // Throws Error(kInvalidConfiguration) when `z` is empty or has a negative
  // entry.
  explicit Configuration(std::vector<Count> z);

  std::span<const Count> z() const { return z_; }
  Count operator[](size_t i) const { return z_[i]; }
  Count m() const { return m_; }
  Count n() const { return static_cast<Count>(z_.size()); }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<Count> z_;
  Count m_ = 0;
};

// Which of the two laws a sample is drawn from.
enum class Law { kSt, kPl };

std::string_view LawName(Law law);
// Accepts "st", "pl".
Law ParseLaw(std::string_view name);

enum class Regime { kFlat, kHilly, kIntermediate };

std::string_view RegimeName(Regime regime);
// Accepts "flat", "hilly", "intermediate". Throws kInvalidArgument otherwise.
Regime ParseRegime(std::string_view name);

struct RegimeSpec {
  Regime regime = Regime::kFlat;
  // Scaling constant; 0 until the caller picks one.
  double c = 0.0;
  // Only meaningful for kIntermediate, where classification sets it to rho.
  double lambda = 0.0;
  // V(A) n^{3/2} / k.
  double rho = 0.0;
  // k < 3 sqrt(n): below the range where the asymptotic predictions apply.
  bool small_k_warning = false;
};

inline constexpr double kDefaultFlatCutoff = 0.1;
inline constexpr double kDefaultHillyCutoff = 10.0;
inline constexpr Count kDefaultMaxM = 1'000'000'000;

struct PowerSums {
  WideCount s1 = 0;
  WideCount s2 = 0;
  WideCount s3 = 0;
  WideCount s4 = 0;
};

Planting MakePlanting(std::vector<Count> a);

// V(A) = sum a_i^2 / n - k^2 / n^2, evaluated as (n S2 - k^2) / n^2 with an
// exact integer numerator. Zero iff all a_i are equal.
double PlantingVariance(const Planting& planting);

// Exact sum a_i^p for p = 1..4. Throws kArithmeticOverflow if any sum leaves
// the 128-bit range.
PowerSums ComputePowerSums(const Planting& planting);

bool BelowAsymptoticRange(const Planting& planting);

// Throws kDegeneratePlanting when k == 0.
RegimeSpec ClassifyRegime(const Planting& planting,
                          double flat_cutoff = kDefaultFlatCutoff,
                          double hilly_cutoff = kDefaultHillyCutoff);

// Flat/Intermediate: round(c k sqrt(n)); Hilly: round(c V n^2). Rounded half
// away from zero, then raised to at least max(k, 1).
Count ScaleM(const Planting& planting, const RegimeSpec& spec,
             Count max_m = kDefaultMaxM);

// Multinomial(m; 1/n, ..., 1/n). Uses binomial splitting for m >= 4n and one
// uniform draw per ball below that.
Configuration SampleSt(Count n, Count m, RandomStream& stream);

// a + Multinomial(m - k; uniform). Throws kNotEnoughBalls when m < k.
Configuration SamplePl(const Planting& planting, Count m, RandomStream& stream);

// The two exact multinomial samplers behind SampleSt, exposed so they can be
// checked against each other. Both add into `counts` (size n).
void ThrowUniformBinomialSplit(Count balls, std::span<Count> counts,
                               RandomStream& stream);
void ThrowUniformPerBall(Count balls, std::span<Count> counts,
                         RandomStream& stream);

}  // namespace plantedbins

#endif  // PLANTEDBINS_CORE_MODEL_H_
