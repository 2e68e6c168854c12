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

#include "plantedbins/tv_engine.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "plantedbins/error.h"
#include "plantedbins/likelihood.h"
#include "plantedbins/numeric.h"
#include "plantedbins/random.h"

namespace plantedbins {
namespace {

void CheckEnoughBalls(const Planting& planting, Count m) {
  if (m < planting.k()) {
    throw Error(ErrorCode::kNotEnoughBalls,
                "m = " + std::to_string(m) + " < k = " +
                    std::to_string(planting.k()));
  }
}

void CheckSamples(int64_t samples) {
  if (samples < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least 2 samples per side, got " +
                    std::to_string(samples));
  }
}

struct EventCounts {
  int64_t st_hits = 0;
  int64_t pl_hits = 0;
};

// Counts how many ST samples and how many PL samples fall in `region`.
// Sample i of either side comes from the stream (seed, side, i / kChunkSize).
EventCounts CountRegionHits(
    const Planting& planting, Count m, const McOptions& options,
    const std::function<bool(const Configuration&)>& region) {
  const int64_t chunks = ChunkCount(options.samples);
  std::vector<EventCounts> per_chunk(static_cast<size_t>(chunks));
  ParallelChunks(chunks, options.threads, [&](int64_t chunk) {
    const int64_t begin = chunk * kChunkSize;
    const int64_t end = std::min(options.samples, begin + kChunkSize);
    EventCounts counts;
    RandomStream st_stream =
        MakeStream(options.seed, {kStStream, static_cast<uint64_t>(chunk)});
    for (int64_t s = begin; s < end; ++s) {
      if (region(SampleSt(planting.n(), m, st_stream))) ++counts.st_hits;
    }
    RandomStream pl_stream =
        MakeStream(options.seed, {kPlStream, static_cast<uint64_t>(chunk)});
    for (int64_t s = begin; s < end; ++s) {
      if (region(SamplePl(planting, m, pl_stream))) ++counts.pl_hits;
    }
    per_chunk[static_cast<size_t>(chunk)] = counts;
  });
  EventCounts total;
  for (const EventCounts& c : per_chunk) {
    total.st_hits += c.st_hits;
    total.pl_hits += c.pl_hits;
  }
  return total;
}

TvEstimate FromCounts(const EventCounts& counts, const McOptions& options,
                      TvMethod method) {
  const double n = static_cast<double>(options.samples);
  const double p_st = static_cast<double>(counts.st_hits) / n;
  const double p_pl = static_cast<double>(counts.pl_hits) / n;
  TvEstimate estimate;
  estimate.value = p_st - p_pl;
  estimate.standard_error =
      std::sqrt(p_st * (1.0 - p_st) / n + p_pl * (1.0 - p_pl) / n);
  estimate.method = method;
  estimate.samples_per_side = options.samples;
  estimate.seed = options.seed;
  return estimate;
}

}  // namespace

std::string_view TvMethodName(TvMethod method) {
  switch (method) {
    case TvMethod::kExact:
      return "exact";
    case TvMethod::kMcOptimal:
      return "optimal";
    case TvMethod::kMcStrategy:
      return "strategy";
  }
  return "unknown";
}

uint64_t CompositionCount(Count n, Count m) {
  if (n < 1 || m < 0) return 0;
  // C(m + n - 1, r) with r = min(n - 1, m); each partial product is itself a
  // binomial coefficient, so the division is exact.
  const uint64_t r = static_cast<uint64_t>(std::min<Count>(n - 1, m));
  const uint64_t top = static_cast<uint64_t>(m + n - 1);
  unsigned __int128 result = 1;
  for (uint64_t i = 1; i <= r; ++i) {
    result = result * (top - r + i) / i;
    if (result > std::numeric_limits<uint64_t>::max()) {
      return std::numeric_limits<uint64_t>::max();
    }
  }
  return static_cast<uint64_t>(result);
}

CompositionEnumerator::CompositionEnumerator(Count n, Count m, int64_t cap)
    : m_(m) {
  if (n < 1 || m < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "enumeration needs n >= 1 and m >= 0");
  }
  const uint64_t count = CompositionCount(n, m);
  if (cap < 0 || count > static_cast<uint64_t>(cap)) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                std::to_string(count) + " configurations exceed the cap of " +
                    std::to_string(cap));
  }
  z_.assign(static_cast<size_t>(n), 0);
}

bool CompositionEnumerator::Next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    z_.back() = m_;
    return true;
  }
  // Move one ball from the rightmost non-empty part r to part r - 1 and pile
  // the rest of part r into the last part.
  size_t r = z_.size();
  while (r > 0 && z_[r - 1] == 0) --r;
  if (r <= 1) {
    done_ = true;
    return false;
  }
  --r;
  const Count v = z_[r];
  z_[r] = 0;
  z_[r - 1] += 1;
  z_.back() = v - 1;
  return true;
}

std::vector<Configuration> EnumerateConfigurations(Count n, Count m,
                                                   int64_t cap) {
  CompositionEnumerator it(n, m, cap);
  std::vector<Configuration> out;
  out.reserve(static_cast<size_t>(CompositionCount(n, m)));
  while (it.Next()) out.push_back(it.configuration());
  return out;
}

TvEstimate ExactTv(const Planting& planting, Count m, int64_t cap) {
  CheckEnoughBalls(planting, m);
  TvEstimate estimate;
  estimate.method = TvMethod::kExact;
  CompositionEnumerator it(planting.n(), m, cap);
  if (planting.k() == 0) return estimate;

  CompensatedSum sum;
  while (it.Next()) {
    const Configuration config(it.current());
    const double st = std::exp(LogProbSt(config));
    const double pl = LogProbPl(planting, config).Exp();
    sum += std::fabs(st - pl);
  }
  estimate.value = std::clamp(0.5 * sum.Value(), 0.0, 1.0);
  return estimate;
}

TvEstimate McTvOptimal(const Planting& planting, Count m,
                       const McOptions& options) {
  CheckEnoughBalls(planting, m);
  CheckSamples(options.samples);
  const LogRatioEvaluator log_ratio(planting, m);
  // ST(Z) >= PL(Z), ties included.
  const EventCounts counts =
      CountRegionHits(planting, m, options, [&](const Configuration& z) {
        const LogRatio r = log_ratio(z);
        return r.is_negative_infinity() || r.value() <= 0.0;
      });
  return FromCounts(counts, options, TvMethod::kMcOptimal);
}

TvEstimate McTvStrategy(const Planting& planting, Count m, StatisticKind kind,
                        const McOptions& options) {
  CheckEnoughBalls(planting, m);
  CheckSamples(options.samples);
  const ThresholdSpec threshold = ThresholdMu(planting, m, kind);
  const EventCounts counts =
      CountRegionHits(planting, m, options, [&](const Configuration& z) {
        return StrategyDecide(EvaluateStatistic(kind, planting, z),
                              threshold) == Decision::kSt;
      });
  TvEstimate estimate = FromCounts(counts, options, TvMethod::kMcStrategy);
  estimate.statistic = kind;
  return estimate;
}

}  // namespace plantedbins
