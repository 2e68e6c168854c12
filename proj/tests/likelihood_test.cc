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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "plantedbins/core_model.h"
#include "plantedbins/error.h"
#include "plantedbins/random.h"
#include "plantedbins/statistics.h"

namespace plantedbins {
namespace {

template <typename Fn>
void ExpectError(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

Configuration Z(std::vector<Count> z) { return Configuration(std::move(z)); }

// Calls fn on every weak composition of m into n parts (nested recursion,
// independent of the library enumerator).
void ForEachComposition(Count n, Count m,
                        const std::function<void(const Configuration&)>& fn) {
  std::vector<Count> z(static_cast<size_t>(n), 0);
  std::function<void(size_t, Count)> rec = [&](size_t i, Count left) {
    if (i + 1 == z.size()) {
      z[i] = left;
      fn(Configuration(z));
      return;
    }
    for (Count v = 0; v <= left; ++v) {
      z[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, m);
}

Planting RandomPlanting(Count n, int max_entry, RandomStream& stream) {
  std::uniform_int_distribution<int> val(0, max_entry);
  std::vector<Count> a(static_cast<size_t>(n));
  for (Count& x : a) x = val(stream);
  return Planting(a);
}

TEST(LogValueTest, States) {
  const LogValue finite = LogValue::Finite(-2.0);
  EXPECT_TRUE(finite.is_finite());
  EXPECT_EQ(finite.value(), -2.0);
  EXPECT_DOUBLE_EQ(finite.Exp(), std::exp(-2.0));

  const LogValue ninf = LogValue::NegativeInfinity();
  EXPECT_TRUE(ninf.is_negative_infinity());
  EXPECT_EQ(ninf.Exp(), 0.0);
  ExpectError(ErrorCode::kInvalidArgument, [&] { (void)ninf.value(); });
}

TEST(LogProbStTest, Examples) {
  EXPECT_EQ(LogProbSt(Z({7})), 0.0);
  EXPECT_EQ(LogProbSt(Z({0})), 0.0);
  EXPECT_NEAR(LogProbSt(Z({1, 1})), std::log(0.5), 1e-15);
  EXPECT_NEAR(LogProbSt(Z({2, 0})), std::log(0.25), 1e-15);
}

TEST(LogProbStTest, Normalization) {
  double total = 0.0;
  ForEachComposition(3, 4,
                     [&](const Configuration& z) { total += std::exp(LogProbSt(z)); });
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(LogProbStTest, LargeArguments) {
  // n = 2, m = 10^6, Z = (m/2, m/2): ln C(m, m/2) - m ln 2 via lgamma.
  const double m = 1e6;
  const double want = std::lgamma(m + 1) - 2 * std::lgamma(m / 2 + 1) -
                      m * std::log(2.0);
  EXPECT_NEAR(LogProbSt(Z({500000, 500000})), want, 1e-8);
}

TEST(LogProbPlTest, Examples) {
  const Planting p = MakePlanting({1, 0});
  EXPECT_TRUE(LogProbPl(p, Z({0, 2})).is_negative_infinity());
  EXPECT_EQ(LogProbPl(MakePlanting({2, 1}), Z({2, 1})).value(), 0.0);
  EXPECT_NEAR(LogProbPl(p, Z({1, 1})).value(), std::log(0.5), 1e-15);
  EXPECT_NEAR(LogProbPl(p, Z({2, 0})).value(), std::log(0.5), 1e-15);
}

TEST(LogProbPlTest, Errors) {
  ExpectError(ErrorCode::kNotEnoughBalls,
              [] { LogProbPl(MakePlanting({3, 0}), Z({1, 1})); });
  ExpectError(ErrorCode::kDimensionMismatch,
              [] { LogProbPl(MakePlanting({1, 0}), Z({1, 1, 0})); });
}

TEST(LogProbPlTest, Normalization) {
  RandomStream stream = MakeStream(31, {});
  for (Count n = 1; n <= 4; ++n) {
    for (Count m = 0; m <= 10; ++m) {
      // A few plantings per (n, m), always including the empty one.
      for (int trial = 0; trial < 4; ++trial) {
        Planting p = RandomPlanting(n, 3, stream);
        if (trial == 0 || p.k() > m) {
          p = Planting(std::vector<Count>(static_cast<size_t>(n), 0));
        }
        double total = 0.0;
        ForEachComposition(n, m, [&](const Configuration& z) {
          total += LogProbPl(p, z).Exp();
        });
        EXPECT_NEAR(total, 1.0, 1e-10) << "n=" << n << " m=" << m;
      }
    }
  }
}

TEST(LogRatioTest, Examples) {
  const Planting empty = MakePlanting({0, 0, 0});
  RandomStream stream = MakeStream(32, {});
  for (int i = 0; i < 10; ++i) {
    const LogRatio r = ComputeLogRatio(empty, SampleSt(3, 17, stream));
    EXPECT_EQ(r.value(), 0.0);
  }
  const Planting p = MakePlanting({1, 0});
  EXPECT_NEAR(ComputeLogRatio(p, Z({2, 0})).value(), std::log(2.0), 1e-15);
  EXPECT_TRUE(ComputeLogRatio(p, Z({0, 2})).is_negative_infinity());
  ExpectError(ErrorCode::kNotEnoughBalls,
              [] { ComputeLogRatio(MakePlanting({2, 0}), Z({1, 0})); });
}

TEST(LogRatioTest, AgreesWithLogProbDifference) {
  RandomStream stream = MakeStream(33, {});
  std::uniform_int_distribution<Count> n_dist(1, 20);
  std::uniform_int_distribution<Count> m_dist(0, 200);
  int finite = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Count n = n_dist(stream);
    const Planting p = RandomPlanting(n, 4, stream);
    const Count m = std::max(p.k(), m_dist(stream));
    // Half from ST (some infeasible), half from PL (always feasible).
    const Configuration z =
        trial % 2 == 0 ? SampleSt(n, m, stream) : SamplePl(p, m, stream);
    const LogRatio r = ComputeLogRatio(p, z);
    const LogValue pl = LogProbPl(p, z);
    EXPECT_EQ(r.is_finite(), pl.is_finite());
    if (r.is_finite()) {
      ++finite;
      EXPECT_NEAR(r.value(), pl.value() - LogProbSt(z), 1e-8);
    }
  }
  EXPECT_GT(finite, 500);
}

TEST(LogRatioEvaluatorTest, MatchesDirectEvaluation) {
  RandomStream stream = MakeStream(34, {});
  const Planting p = MakePlanting({3, 0, 1, 2, 0});
  const LogRatioEvaluator eval(p, 40);
  for (int i = 0; i < 200; ++i) {
    const Configuration z = SampleSt(5, 40, stream);
    const LogRatio a = eval(z);
    const LogRatio b = ComputeLogRatio(p, z);
    ASSERT_EQ(a.is_finite(), b.is_finite());
    if (a.is_finite()) EXPECT_NEAR(a.value(), b.value(), 1e-12);
  }
  ExpectError(ErrorCode::kNotEnoughBalls, [&] { LogRatioEvaluator(p, 5); });
}

TEST(ErrorTermExactTest, Examples) {
  EXPECT_EQ(ErrorTermExact(MakePlanting({0, 0}), Z({3, 1})), 0.0);

  // a_i <= 1: only ln E2 = k ln m - ln (m)_k remains.
  const double m = 10.0;
  const double want = 3 * std::log(m) - std::log(10.0 * 9.0 * 8.0);
  EXPECT_NEAR(ErrorTermExact(MakePlanting({1, 1, 0, 1}), Z({2, 3, 1, 4})),
              want, 1e-14);

  EXPECT_NEAR(ErrorTermExact(MakePlanting({2, 0}), Z({3, 1})),
              std::log(2.0 / 3.0) + std::log(16.0 / 12.0), 1e-14);
  EXPECT_NEAR(ErrorTermExact(MakePlanting({2, 0}), Z({3, 1})), -0.117783,
              1e-6);
}

TEST(ErrorTermExactTest, Errors) {
  ExpectError(ErrorCode::kUndefinedErrorTerm,
              [] { ErrorTermExact(MakePlanting({1, 0}), Z({0, 2})); });
  ExpectError(ErrorCode::kUndefinedErrorTerm,
              [] { ErrorTermExact(MakePlanting({3, 0}), Z({2, 2})); });
}

TEST(LogRatioTest, Decomposition) {
  // ln PL/ST = ln E1 E2 + sum a_i ln(1 + q_i).
  RandomStream stream = MakeStream(35, {});
  std::uniform_int_distribution<Count> n_dist(1, 20);
  std::uniform_int_distribution<Count> extra(0, 150);
  for (int trial = 0; trial < 1000; ++trial) {
    const Count n = n_dist(stream);
    const Planting p = RandomPlanting(n, 4, stream);
    const Count m = std::max<Count>(1, p.k() + extra(stream));
    const Configuration z = SamplePl(p, m, stream);
    bool defined = true;
    for (Count i = 0; i < n; ++i) defined = defined && !(p[i] > 0 && z[i] == 0);
    if (!defined) continue;
    const std::vector<double> q = QValues(z);
    double tail = 0.0;
    for (Count i = 0; i < n; ++i) {
      if (p[i] > 0) tail += static_cast<double>(p[i]) * std::log1p(q[i]);
    }
    EXPECT_NEAR(ComputeLogRatio(p, z).value(), ErrorTermExact(p, z) + tail,
                1e-8);
  }
}

TEST(ErrorTermAsymptoticTest, Examples) {
  const Planting flat(std::vector<Count>(100, 1));
  EXPECT_NEAR(ErrorTermAsymptotic(flat, 10'000), 0.5 + 1.0 / 600.0, 1e-12);
  EXPECT_EQ(ErrorTermAsymptotic(MakePlanting({0, 0, 0}), 50), 0.0);
}

TEST(ErrorTermAsymptoticTest, FormulaAndDecay) {
  const Planting p = MakePlanting({4, 1, 0});
  const double n = 3, k = 5;
  const double v = PlantingVariance(p);
  for (double m : {5.0, 17.0, 1000.0}) {
    const double want = -v * n * n / (2 * m) + k * n / (2 * m) +
                        5 * k * n * n / (12 * m * m) - k * k * n / (4 * m * m);
    EXPECT_NEAR(ErrorTermAsymptotic(p, static_cast<Count>(m)), want, 1e-14);
  }
  double previous = std::fabs(ErrorTermAsymptotic(p, 1000));
  for (Count m = 10'000; m <= 100'000'000; m *= 10) {
    const double current = std::fabs(ErrorTermAsymptotic(p, m));
    EXPECT_LT(current, previous);
    previous = current;
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(LogRatioExpansionTest, Definitional) {
  EXPECT_EQ(LogRatioExpansion(MakePlanting({0, 0}), Z({5, 2})), 0.0);

  RandomStream stream = MakeStream(36, {});
  for (int trial = 0; trial < 200; ++trial) {
    const Planting p = RandomPlanting(6, 5, stream);
    const Count m = p.k() + 25;
    const Configuration z = SampleSt(6, m, stream);
    const double n = 6, k = static_cast<double>(p.k()),
                 md = static_cast<double>(m);
    const double v = PlantingVariance(p);
    const double want = -v * n * n / (2 * md) + k * n / (2 * md) -
                        k * k * n / (4 * md * md) + StatH(p, z) -
                        0.5 * StatF(p, z);
    EXPECT_NEAR(LogRatioExpansion(p, z), want,
                1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST(LogRatioExpansionTest, ConcentratesOnFlatSamples) {
  // Flat planting, n = 2500, c = 1: m = k sqrt(n) = 125000.
  const Planting p(std::vector<Count>(2500, 1));
  const Count m = 125'000;
  RandomStream stream = MakeStream(37, {});
  std::vector<double> gaps;
  for (int s = 0; s < 301; ++s) {
    const Configuration z = SampleSt(2500, m, stream);
    gaps.push_back(
        std::fabs(ComputeLogRatio(p, z).value() - LogRatioExpansion(p, z)));
  }
  std::nth_element(gaps.begin(), gaps.begin() + 150, gaps.end());
  EXPECT_LT(gaps[150], 0.1);
}

}  // namespace
}  // namespace plantedbins
