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

// Exact log-probabilities of a configuration under ST and PL, and the
// log-likelihood ratio
//
//   ln PL(Z)/ST(Z) = k ln n + sum_i ln (z_i)_{a_i} - ln (m)_k
//
// where (x)_j = x (x-1) ... (x-j+1). Everything stays in the log domain.

#ifndef PLANTEDBINS_LIKELIHOOD_H_
#define PLANTEDBINS_LIKELIHOOD_H_

#include "plantedbins/core_model.h"

namespace plantedbins {

// A log-probability or log-ratio that may be -infinity (probability zero).
// The -infinity case is a separate state, so it cannot leak into arithmetic
// as a floating-point value.
class LogValue {
 public:
  static LogValue Finite(double value) { return LogValue(false, value); }
  static LogValue NegativeInfinity() { return LogValue(true, 0.0); }

  bool is_negative_infinity() const { return negative_infinity_; }
  bool is_finite() const { return !negative_infinity_; }

  // Throws kInvalidArgument on the -infinity state.
  double value() const;

  // exp(value), or exactly 0 for -infinity.
  double Exp() const;

  friend bool operator==(const LogValue&, const LogValue&) = default;

 private:
  LogValue(bool negative_infinity, double value)
      : negative_infinity_(negative_infinity), value_(value) {}

  bool negative_infinity_;
  double value_;
};

using LogRatio = LogValue;

// ln m! - sum ln z_i! - m ln n.
double LogProbSt(const Configuration& config);

// ln (m-k)! - sum ln (z_i - a_i)! - (m-k) ln n, or -infinity if some
// z_i < a_i. Throws kNotEnoughBalls when m < k and kDimensionMismatch when
// the bin counts differ.
LogValue LogProbPl(const Planting& planting, const Configuration& config);

// Falling-factorial form of ln PL(Z)/ST(Z).
LogRatio ComputeLogRatio(const Planting& planting, const Configuration& config);

// Repeated evaluation of the log ratio for a fixed (planting, m). The
// Z-independent part k ln n - ln (m)_k is summed once at construction.
class LogRatioEvaluator {
 public:
  LogRatioEvaluator(const Planting& planting, Count m);

  LogRatio operator()(const Configuration& config) const;

  double constant_term() const { return constant_; }

 private:
  Planting planting_;
  Count m_;
  double constant_;
};

// ln E1 + ln E2 with
//   ln E1 = sum_i sum_{j<a_i} ln(1 - j/z_i),
//   ln E2 = k ln m - ln (m)_k.
// Throws kUndefinedErrorTerm when some z_i < a_i or z_i == 0 with a_i >= 1.
double ErrorTermExact(const Planting& planting, const Configuration& config);

// -V n^2/2m + kn/2m + 5kn^2/12m^2 - k^2 n/4m^2.
double ErrorTermAsymptotic(const Planting& planting, Count m);

// -V n^2/2m + kn/2m - k^2 n/4m^2 + sum a_i q_i - (1/2) sum a_i q_i^2.
double LogRatioExpansion(const Planting& planting, const Configuration& config);

}  // namespace plantedbins

#endif  // PLANTEDBINS_LIKELIHOOD_H_
