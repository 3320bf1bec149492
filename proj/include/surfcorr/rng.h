// Copyright 2026 The surfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SURFCORR_RNG_H
#define SURFCORR_RNG_H

#include <cstdint>
#include <random>

namespace surfcorr {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
uint64_t splitmix64(uint64_t x);

/// Counter-based stream splitting: the seed of stream (cell, shard) under `master` is
/// splitmix64(splitmix64(master + 0x9E3779B97F4A7C15 * (cell + 1)) ^ (shard + 1)).
uint64_t stream_seed(uint64_t master, uint64_t cell, uint64_t shard);

inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double p) {
    return uniform01(rng) < p;
}

/// 64 independent Bernoulli(p) bits.
uint64_t bernoulli_mask(Rng &rng, double p);

}  // namespace surfcorr

#endif
