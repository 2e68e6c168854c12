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

// Reproducible random streams and the deterministic chunked work loop used by
// every Monte Carlo routine.
//
// Streams are derived, never shared. A stream is identified by a master seed
// and a path of indices (for example: job, side, chunk). The derivation is
//
//   s_0     = master
//   s_{j+1} = SplitMix64(s_j ^ SplitMix64(index_j + 0x9E3779B97F4A7C15))
//
// and the resulting 64-bit value seeds a std::mt19937_64, whose output
// sequence is fixed by the C++ standard. Variates are drawn with Boost.Random
// distributions, whose algorithms are fixed by the Boost sources rather than
// by the standard library vendor, so a seed reproduces the same samples on
// every platform.
//
// Monte Carlo work is cut into fixed-size chunks and the stream path includes
// the chunk index, never the worker index. Any number of workers therefore
// sees exactly the same samples.

#ifndef PLANTEDBINS_RANDOM_H_
#define PLANTEDBINS_RANDOM_H_

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

namespace plantedbins {

using RandomStream = std::mt19937_64;

// Samples handled by one unit of parallel work.
inline constexpr int64_t kChunkSize = 512;

// One splitmix64 step from state x: mixes x + 0x9E3779B97F4A7C15.
uint64_t SplitMix64(uint64_t x);

uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> path);

RandomStream MakeStream(uint64_t master, std::initializer_list<uint64_t> path);

// Worker count: `requested` if positive, otherwise the hardware concurrency
// (at least 1).
int ResolveThreads(int requested);

int64_t ChunkCount(int64_t samples);

// Runs fn(chunk) for chunk in [0, chunks) on up to `threads` workers. Each
// chunk runs exactly once; callers store per-chunk results by index so the
// reduction order never depends on scheduling. The first exception thrown by
// any chunk is rethrown on the calling thread.
void ParallelChunks(int64_t chunks, int threads,
                    const std::function<void(int64_t)>& fn);

}  // namespace plantedbins

#endif  // PLANTEDBINS_RANDOM_H_
