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

#include "plantedbins/numeric.h"

#include <array>
#include <numbers>
#include <vector>

namespace plantedbins {
namespace {

constexpr int64_t kTableSize = int64_t{1} << 16;

const std::vector<double>& LogFactorialTable() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableSize);
    for (int64_t i = 0; i < kTableSize; ++i) {
      t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    return t;
  }();
  return table;
}

}  // namespace

double LogFactorial(int64_t x) {
  if (x < kTableSize) return LogFactorialTable()[x];
  // ln x! = (x + 1/2) ln(x + 1) - (x + 1) + ln(2 pi)/2 + series in 1/(x+1).
  const double y = static_cast<double>(x) + 1.0;
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 -
             inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
  return (y - 0.5) * std::log(y) - y +
         0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace plantedbins
