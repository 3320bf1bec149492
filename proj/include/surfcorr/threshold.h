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

#ifndef SURFCORR_THRESHOLD_H
#define SURFCORR_THRESHOLD_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace surfcorr {

struct Interval {
    double low = 0;
    double high = 0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_ci(uint64_t failures, uint64_t shots, double z = 1.96);

struct CurvePoint {
    int d = 0;
    double p = 0;
    uint64_t shots = 0;
    uint64_t failures = 0;
};

struct ThresholdEstimate {
    double p_th = 0;
    Interval ci;
    std::string method;
    std::vector<int> distances;
    /// Crossing of each consecutive distance pair.
    std::vector<double> pair_crossings;
    int resamples_used = 0;
};

struct ThresholdOptions {
    int resamples = 1000;
    uint64_t seed = 0x5eed;
};

/// Crossing of log logical-rate curves of consecutive distances, each from straight-line fits over the
/// four grid points around the sign change, averaged over pairs. Throws InfeasibleError when a pair
/// of curves does not cross inside the grid.
ThresholdEstimate estimate_threshold(std::span<const CurvePoint> points, const ThresholdOptions &options = {});

/// Point estimate only (no bootstrap).
std::vector<double> pairwise_crossings(std::span<const CurvePoint> points);

/// The `count` grid values of p closest to `p_th`, ascending.
std::vector<double> nearest_grid_points(std::span<const CurvePoint> points, double p_th, size_t count = 4);

}  // namespace surfcorr

#endif
