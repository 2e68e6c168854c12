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

#include "plantedbins/likelihood.h"

#include <cmath>
#include <string>

#include "plantedbins/error.h"
#include "plantedbins/numeric.h"
#include "plantedbins/statistics.h"

namespace plantedbins {
namespace {

void CheckDimensions(const Planting& planting, const Configuration& config) {
  if (planting.n() != config.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "planting has " + std::to_string(planting.n()) +
                    " bins, configuration has " + std::to_string(config.n()));
  }
}

void CheckEnoughBalls(const Planting& planting, Count m) {
  if (m < planting.k()) {
    throw Error(ErrorCode::kNotEnoughBalls,
                "m = " + std::to_string(m) + " < k = " +
                    std::to_string(planting.k()));
  }
}

// -ln((m)_k / m^k) = -sum_{j<k} log1p(-j/m).
double LogE2(Count m, Count k) {
  CompensatedSum sum;
  const double md = static_cast<double>(m);
  for (Count j = 1; j < k; ++j) sum += -std::log1p(-static_cast<double>(j) / md);
  return sum.Value();
}

}  // namespace

double LogValue::value() const {
  if (negative_infinity_) {
    throw Error(ErrorCode::kInvalidArgument,
                "value() called on a -infinity log value");
  }
  return value_;
}

double LogValue::Exp() const {
  return negative_infinity_ ? 0.0 : std::exp(value_);
}

double LogProbSt(const Configuration& config) {
  CompensatedSum sum;
  sum += LogFactorial(config.m());
  for (Count z : config.z()) sum += -LogFactorial(z);
  sum += -static_cast<double>(config.m()) *
         std::log(static_cast<double>(config.n()));
  return sum.Value();
}

LogValue LogProbPl(const Planting& planting, const Configuration& config) {
  CheckDimensions(planting, config);
  CheckEnoughBalls(planting, config.m());
  const Count free_balls = config.m() - planting.k();
  CompensatedSum sum;
  sum += LogFactorial(free_balls);
  for (size_t i = 0; i < config.z().size(); ++i) {
    const Count r = config[i] - planting[i];
    if (r < 0) return LogValue::NegativeInfinity();
    sum += -LogFactorial(r);
  }
  sum += -static_cast<double>(free_balls) *
         std::log(static_cast<double>(config.n()));
  return LogValue::Finite(sum.Value());
}

LogRatioEvaluator::LogRatioEvaluator(const Planting& planting, Count m)
    : planting_(planting), m_(m) {
  CheckEnoughBalls(planting, m);
  CompensatedSum sum;
  sum += static_cast<double>(planting.k()) *
         std::log(static_cast<double>(planting.n()));
  for (Count j = 0; j < planting.k(); ++j) {
    sum += -std::log(static_cast<double>(m - j));
  }
  constant_ = sum.Value();
}

LogRatio LogRatioEvaluator::operator()(const Configuration& config) const {
  CheckDimensions(planting_, config);
  if (config.m() != m_) {
    throw Error(ErrorCode::kInvalidArgument,
                "configuration has m = " + std::to_string(config.m()) +
                    ", evaluator was built for m = " + std::to_string(m_));
  }
  if (planting_.k() == 0) return LogRatio::Finite(0.0);
  CompensatedSum sum;
  sum += constant_;
  for (size_t i = 0; i < config.z().size(); ++i) {
    const Count a = planting_[i];
    if (a == 0) continue;
    const Count z = config[i];
    if (z < a) return LogRatio::NegativeInfinity();
    for (Count j = 0; j < a; ++j) {
      sum += std::log(static_cast<double>(z - j));
    }
  }
  return LogRatio::Finite(sum.Value());
}

LogRatio ComputeLogRatio(const Planting& planting,
                         const Configuration& config) {
  CheckDimensions(planting, config);
  return LogRatioEvaluator(planting, config.m())(config);
}

double ErrorTermExact(const Planting& planting, const Configuration& config) {
  CheckDimensions(planting, config);
  CompensatedSum sum;
  for (size_t i = 0; i < config.z().size(); ++i) {
    const Count a = planting[i];
    if (a == 0) continue;
    const Count z = config[i];
    if (z == 0 || z < a) {
      throw Error(ErrorCode::kUndefinedErrorTerm,
                  "bin " + std::to_string(i) + " has z = " +
                      std::to_string(z) + " < a = " + std::to_string(a));
    }
    const double zd = static_cast<double>(z);
    for (Count j = 1; j < a; ++j) {
      sum += std::log1p(-static_cast<double>(j) / zd);
    }
  }
  sum += LogE2(config.m(), planting.k());
  return sum.Value();
}

double ErrorTermAsymptotic(const Planting& planting, Count m) {
  if (m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "error term needs m >= 1");
  }
  const double n = static_cast<double>(planting.n());
  const double k = static_cast<double>(planting.k());
  const double md = static_cast<double>(m);
  const double v = PlantingVariance(planting);
  return -v * n * n / (2.0 * md) + k * n / (2.0 * md) +
         5.0 * k * n * n / (12.0 * md * md) - k * k * n / (4.0 * md * md);
}

double LogRatioExpansion(const Planting& planting,
                         const Configuration& config) {
  CheckDimensions(planting, config);
  const double n = static_cast<double>(planting.n());
  const double k = static_cast<double>(planting.k());
  const double md = static_cast<double>(config.m());
  const double v = PlantingVariance(planting);
  return -v * n * n / (2.0 * md) + k * n / (2.0 * md) -
         k * k * n / (4.0 * md * md) + StatI(planting, config);
}

}  // namespace plantedbins
