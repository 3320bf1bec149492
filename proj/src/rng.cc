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

#include "surfcorr/rng.h"

#include <cmath>

namespace surfcorr {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t stream_seed(uint64_t master, uint64_t cell, uint64_t shard) {
    return splitmix64(splitmix64(master + 0x9E3779B97F4A7C15ULL * (cell + 1)) ^ (shard + 1));
}

uint64_t bernoulli_mask(Rng &rng, double p) {
    if (p <= 0) {
        return 0;
    }
    if (p >= 1) {
        return ~uint64_t{0};
    }
    if (p > 0.25) {
        uint64_t mask = 0;
        for (int i = 0; i < 64; ++i) {
            mask |= uint64_t{bernoulli(rng, p)} << i;
        }
        return mask;
    }
    // Geometric gaps between set bits.
    double log_q = std::log1p(-p);
    uint64_t mask = 0;
    double pos = -1;
    while (true) {
        double u = uniform01(rng);
        pos += 1 + std::floor(std::log1p(-u) / log_q);
        if (pos >= 64) {
            break;
        }
        mask |= uint64_t{1} << static_cast<int>(pos);
    }
    return mask;
}

}  // namespace surfcorr
