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

#include "plantedbins/statistics.h"

#include <optional>
#include <string>

#include "plantedbins/error.h"
#include "plantedbins/numeric.h"

namespace plantedbins {
namespace {

using SignedWide = __int128;

void CheckNonEmpty(const Configuration& config) {
  if (config.m() == 0) {
    throw Error(ErrorCode::kUndefinedForEmpty,
                "q values are undefined for m == 0");
  }
}

void CheckDimensions(const Planting& planting, const Configuration& config) {
  if (planting.n() != config.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "planting has " + std::to_string(planting.n()) +
                    " bins, configuration has " + std::to_string(config.n()));
  }
  CheckNonEmpty(config);
}

// q_i as the correctly rounded quotient of two exact integers.
double QValue(Count n, Count z, Count m) {
  const SignedWide numerator =
      static_cast<SignedWide>(n) * z - static_cast<SignedWide>(m);
  return static_cast<double>(numerator) / static_cast<double>(m);
}

// (n sum a_i z_i - k m) / m in 128-bit integers; nullopt on overflow.
std::optional<double> ExactH(const Planting& planting,
                             const Configuration& config) {
  const Count n = config.n();
  const Count m = config.m();
  SignedWide weighted = 0;
  bool overflow = false;
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
    SignedWide term;
    overflow |= __builtin_mul_overflow(static_cast<SignedWide>(planting[i]),
                                       static_cast<SignedWide>(config[i]),
                                       &term);
    overflow |= __builtin_add_overflow(weighted, term, &weighted);
  }
  SignedWide numerator;
  SignedWide km;
  overflow |= __builtin_mul_overflow(weighted, static_cast<SignedWide>(n),
                                     &numerator);
  overflow |= __builtin_mul_overflow(static_cast<SignedWide>(planting.k()),
                                     static_cast<SignedWide>(m), &km);
  if (overflow) return std::nullopt;
  return static_cast<double>(numerator - km) / static_cast<double>(m);
}

double CompensatedH(const Planting& planting, const Configuration& config) {
  const Count n = config.n();
  const Count m = config.m();
  CompensatedSum sum;
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
    sum += static_cast<double>(planting[i]) * QValue(n, config[i], m);
  }
  return sum.Value();
}

double IntPow(double q, int p) {
  switch (p) {
    case 2:
      return q * q;
    case 3:
      return q * q * q;
    case 4: {
      const double q2 = q * q;
      return q2 * q2;
    }
    default:
      return q;
  }
}

// sum a_i q_i^p for p in 2..4.
double WeightedPowerSum(const Planting& planting, const Configuration& config,
                        int p) {
  const Count n = config.n();
  const Count m = config.m();
  CompensatedSum sum;
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
    if (planting[i] == 0) continue;
    sum += static_cast<double>(planting[i]) * IntPow(QValue(n, config[i], m), p);
  }
  return sum.Value();
}

}  // namespace

std::string_view StatisticName(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::kPairs:
      return "pairs";
    case StatisticKind::kFlatF:
      return "f";
    case StatisticKind::kHillyH:
      return "h";
    case StatisticKind::kIntermediateI:
      return "i";
  }
  return "unknown";
}

StatisticKind ParseStatistic(std::string_view name) {
  if (name == "pairs") return StatisticKind::kPairs;
  if (name == "f") return StatisticKind::kFlatF;
  if (name == "h") return StatisticKind::kHillyH;
  if (name == "i") return StatisticKind::kIntermediateI;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown statistic '" + std::string(name) + "'");
}

StatisticKind RegimeStatistic(Regime regime) {
  switch (regime) {
    case Regime::kFlat:
      return StatisticKind::kFlatF;
    case Regime::kHilly:
      return StatisticKind::kHillyH;
    case Regime::kIntermediate:
      return StatisticKind::kIntermediateI;
  }
  return StatisticKind::kFlatF;
}

std::vector<double> QValues(const Configuration& config) {
  CheckNonEmpty(config);
  std::vector<double> q(config.z().size());
  for (size_t i = 0; i < q.size(); ++i) {
    q[i] = QValue(config.n(), config[i], config.m());
  }
  return q;
}

Count StatPairs(const Configuration& config) {
  Count total = 0;
  for (Count z : config.z()) {
    Count pairs;
    if (__builtin_mul_overflow(z, z - 1, &pairs) ||
        __builtin_add_overflow(total, pairs / 2, &total)) {
      throw Error(ErrorCode::kArithmeticOverflow, "pair count exceeds 64 bits");
    }
  }
  return total;
}

double StatF(const Planting& planting, const Configuration& config) {
  CheckDimensions(planting, config);
  return WeightedPowerSum(planting, config, 2);
}

double StatH(const Planting& planting, const Configuration& config) {
  CheckDimensions(planting, config);
  if (auto exact = ExactH(planting, config)) return *exact;
  return CompensatedH(planting, config);
}

double StatI(const Planting& planting, const Configuration& config) {
  CheckDimensions(planting, config);
  const Count n = config.n();
  const Count m = config.m();
  SignedWide weighted = 0;
  bool overflow = false;
  CompensatedSum h;
  CompensatedSum f;
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
    if (planting[i] == 0) continue;
    SignedWide term;
    overflow |= __builtin_mul_overflow(static_cast<SignedWide>(planting[i]),
                                       static_cast<SignedWide>(config[i]),
                                       &term);
    overflow |= __builtin_add_overflow(weighted, term, &weighted);
    const double weight = static_cast<double>(planting[i]);
    const double q = QValue(n, config[i], m);
    h += weight * q;
    f += weight * q * q;
  }
  SignedWide numerator;
  SignedWide km;
  overflow |= __builtin_mul_overflow(weighted, static_cast<SignedWide>(n),
                                     &numerator);
  overflow |= __builtin_mul_overflow(static_cast<SignedWide>(planting.k()),
                                     static_cast<SignedWide>(m), &km);
  const double h_value =
      overflow ? h.Value()
               : static_cast<double>(numerator - km) / static_cast<double>(m);
  return h_value - 0.5 * f.Value();
}

double StatPowerSum(const Planting& planting, const Configuration& config,
                    int p) {
  if (p < 1 || p > 4) {
    throw Error(ErrorCode::kUnsupportedPower,
                "power must be in 1..4, got " + std::to_string(p));
  }
  if (p == 1) return StatH(planting, config);
  CheckDimensions(planting, config);
  return WeightedPowerSum(planting, config, p);
}

double EvaluateStatistic(StatisticKind kind, const Planting& planting,
                         const Configuration& config) {
  switch (kind) {
    case StatisticKind::kPairs:
      return static_cast<double>(StatPairs(config));
    case StatisticKind::kFlatF:
      return StatF(planting, config);
    case StatisticKind::kHillyH:
      return StatH(planting, config);
    case StatisticKind::kIntermediateI:
      return StatI(planting, config);
  }
  return 0.0;
}

ThresholdSpec ThresholdMu(const Planting& planting, Count m,
                          StatisticKind kind) {
  if (kind == StatisticKind::kPairs) {
    throw Error(ErrorCode::kNoThresholdDefined,
                "the pairs statistic has no decision threshold");
  }
  if (m < 1) {
    throw Error(ErrorCode::kUndefinedForEmpty, "thresholds need m >= 1");
  }
  const double n = static_cast<double>(planting.n());
  const double k = static_cast<double>(planting.k());
  const double md = static_cast<double>(m);
  const double v = PlantingVariance(planting);

  ThresholdSpec spec;
  spec.kind = kind;
  switch (kind) {
    case StatisticKind::kFlatF:
      spec.mu = k * n / md - k * k * n / (2.0 * md * md);
      spec.direction = Direction::kChooseStIfAtLeast;
      break;
    case StatisticKind::kHillyH:
      spec.mu = v * n * n / (2.0 * md);
      spec.direction = Direction::kChoosePlIfAtLeast;
      break;
    case StatisticKind::kIntermediateI:
      spec.mu = -k * n / (2.0 * md) + k * k * n / (4.0 * md * md) +
                v * n * n / (2.0 * md);
      spec.direction = Direction::kChoosePlIfAtLeast;
      break;
    case StatisticKind::kPairs:
      break;
  }
  return spec;
}

Decision StrategyDecide(double value, const ThresholdSpec& spec) {
  const bool at_least = value >= spec.mu;
  if (spec.direction == Direction::kChooseStIfAtLeast) {
    return at_least ? Decision::kSt : Decision::kPl;
  }
  return at_least ? Decision::kPl : Decision::kSt;
}

}  // namespace plantedbins
