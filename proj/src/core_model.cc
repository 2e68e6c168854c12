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

#include "plantedbins/core_model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "plantedbins/error.h"

namespace plantedbins {
namespace {

Count CheckedSum(std::span<const Count> values, ErrorCode negative_code,
                 const char* what) {
  Count total = 0;
  for (Count v : values) {
    if (v < 0) {
      throw Error(negative_code,
                  std::string(what) + " entries must be non-negative");
    }
    if (__builtin_add_overflow(total, v, &total)) {
      throw Error(ErrorCode::kArithmeticOverflow,
                  std::string(what) + " total exceeds 64 bits");
    }
  }
  return total;
}

WideCount CheckedMul(WideCount a, WideCount b) {
  WideCount out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kArithmeticOverflow, "power sum exceeds 128 bits");
  }
  return out;
}

WideCount CheckedAdd(WideCount a, WideCount b) {
  WideCount out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kArithmeticOverflow, "power sum exceeds 128 bits");
  }
  return out;
}

}  // namespace

Planting::Planting(std::vector<Count> a) : a_(std::move(a)) {
  if (a_.empty()) {
    throw Error(ErrorCode::kInvalidPlanting, "planting needs at least one bin");
  }
  k_ = CheckedSum(a_, ErrorCode::kInvalidPlanting, "planting");
}

Configuration::Configuration(std::vector<Count> z) : z_(std::move(z)) {
  if (z_.empty()) {
    throw Error(ErrorCode::kInvalidConfiguration,
                "configuration needs at least one bin");
  }
  m_ = CheckedSum(z_, ErrorCode::kInvalidConfiguration, "configuration");
}

std::string_view LawName(Law law) { return law == Law::kSt ? "st" : "pl"; }

Law ParseLaw(std::string_view name) {
  if (name == "st") return Law::kSt;
  if (name == "pl") return Law::kPl;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown distribution '" + std::string(name) + "'");
}

std::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kFlat:
      return "flat";
    case Regime::kHilly:
      return "hilly";
    case Regime::kIntermediate:
      return "intermediate";
  }
  return "unknown";
}

Regime ParseRegime(std::string_view name) {
  if (name == "flat") return Regime::kFlat;
  if (name == "hilly") return Regime::kHilly;
  if (name == "intermediate") return Regime::kIntermediate;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown regime '" + std::string(name) + "'");
}

Planting MakePlanting(std::vector<Count> a) { return Planting(std::move(a)); }

double PlantingVariance(const Planting& planting) {
  const PowerSums sums = ComputePowerSums(planting);
  const WideCount n = static_cast<WideCount>(planting.n());
  const WideCount k = static_cast<WideCount>(planting.k());
  // n S2 >= k^2 by Cauchy-Schwarz, so the difference never wraps.
  const WideCount numerator = CheckedMul(n, sums.s2) - CheckedMul(k, k);
  const double nd = static_cast<double>(planting.n());
  return static_cast<double>(numerator) / (nd * nd);
}

PowerSums ComputePowerSums(const Planting& planting) {
  PowerSums sums;
  for (Count value : planting.a()) {
    const WideCount a = static_cast<WideCount>(value);
    const WideCount a2 = CheckedMul(a, a);
    const WideCount a3 = CheckedMul(a2, a);
    const WideCount a4 = CheckedMul(a3, a);
    sums.s1 = CheckedAdd(sums.s1, a);
    sums.s2 = CheckedAdd(sums.s2, a2);
    sums.s3 = CheckedAdd(sums.s3, a3);
    sums.s4 = CheckedAdd(sums.s4, a4);
  }
  return sums;
}

bool BelowAsymptoticRange(const Planting& planting) {
  return static_cast<double>(planting.k()) <
         3.0 * std::sqrt(static_cast<double>(planting.n()));
}

RegimeSpec ClassifyRegime(const Planting& planting, double flat_cutoff,
                          double hilly_cutoff) {
  if (planting.k() == 0) {
    throw Error(ErrorCode::kDegeneratePlanting,
                "k == 0: the planted law equals the standard law");
  }
  if (!(flat_cutoff <= hilly_cutoff)) {
    throw Error(ErrorCode::kInvalidArgument,
                "flat cutoff must not exceed hilly cutoff");
  }
  const double n = static_cast<double>(planting.n());
  RegimeSpec spec;
  spec.rho = PlantingVariance(planting) * n * std::sqrt(n) /
             static_cast<double>(planting.k());
  spec.small_k_warning = BelowAsymptoticRange(planting);
  if (spec.rho < flat_cutoff) {
    spec.regime = Regime::kFlat;
  } else if (spec.rho > hilly_cutoff) {
    spec.regime = Regime::kHilly;
  } else {
    spec.regime = Regime::kIntermediate;
    spec.lambda = spec.rho;
  }
  return spec;
}

Count ScaleM(const Planting& planting, const RegimeSpec& spec, Count max_m) {
  if (!(spec.c > 0.0) || !std::isfinite(spec.c)) {
    throw Error(ErrorCode::kInvalidScale, "scaling constant c must be > 0");
  }
  const double n = static_cast<double>(planting.n());
  const double k = static_cast<double>(planting.k());
  double target = 0.0;
  if (spec.regime == Regime::kHilly) {
    target = spec.c * PlantingVariance(planting) * n * n;
  } else {
    target = spec.c * k * std::sqrt(n);
  }
  // std::round rounds half away from zero.
  const double rounded = std::round(target);
  if (!(rounded <= static_cast<double>(max_m))) {
    throw Error(ErrorCode::kScaleTooLarge,
                "m = " + std::to_string(rounded) + " exceeds the maximum " +
                    std::to_string(max_m));
  }
  Count m = static_cast<Count>(rounded);
  m = std::max({m, planting.k(), Count{1}});
  if (m > max_m) {
    throw Error(ErrorCode::kScaleTooLarge,
                "m = k = " + std::to_string(m) + " exceeds the maximum");
  }
  return m;
}

void ThrowUniformBinomialSplit(Count balls, std::span<Count> counts,
                               RandomStream& stream) {
  const size_t n = counts.size();
  Count remaining = balls;
  for (size_t i = 0; i + 1 < n && remaining > 0; ++i) {
    // Conditional on the earlier bins, bin i gets Binomial(remaining,
    // 1 / (bins left)).
    const double p = 1.0 / static_cast<double>(n - i);
    boost::random::binomial_distribution<Count, double> binomial(remaining, p);
    const Count x = binomial(stream);
    counts[i] += x;
    remaining -= x;
  }
  counts[n - 1] += remaining;
}

void ThrowUniformPerBall(Count balls, std::span<Count> counts,
                         RandomStream& stream) {
  boost::random::uniform_int_distribution<size_t> bin(0, counts.size() - 1);
  for (Count b = 0; b < balls; ++b) ++counts[bin(stream)];
}

namespace {

void ThrowUniform(Count balls, std::span<Count> counts, RandomStream& stream) {
  if (balls < 4 * static_cast<Count>(counts.size())) {
    ThrowUniformPerBall(balls, counts, stream);
  } else {
    ThrowUniformBinomialSplit(balls, counts, stream);
  }
}

}  // namespace

Configuration SampleSt(Count n, Count m, RandomStream& stream) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "m must be >= 0");
  std::vector<Count> z(static_cast<size_t>(n), 0);
  ThrowUniform(m, z, stream);
  return Configuration(std::move(z));
}

Configuration SamplePl(const Planting& planting, Count m, RandomStream& stream) {
  if (m < planting.k()) {
    throw Error(ErrorCode::kNotEnoughBalls,
                "m = " + std::to_string(m) + " < k = " +
                    std::to_string(planting.k()));
  }
  std::vector<Count> z(planting.a().begin(), planting.a().end());
  ThrowUniform(m - planting.k(), z, stream);
  return Configuration(std::move(z));
}

}  // namespace plantedbins
