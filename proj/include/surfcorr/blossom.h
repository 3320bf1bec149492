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

#ifndef SURFCORR_BLOSSOM_H
#define SURFCORR_BLOSSOM_H

#include <cstdint>
#include <span>
#include <vector>

namespace surfcorr {

struct WeightedEdge {
    uint32_t u;
    uint32_t v;
    int64_t weight;
};

struct PerfectMatching {
    /// mate[v] is the node matched to v.
    std::vector<uint32_t> mate;
    int64_t total_weight = 0;
};

/// Exact minimum-weight perfect matching on a sparse graph with integer weights.
///
/// Edmonds' primal-dual blossom algorithm in the O(n^3) formulation with integer dual
/// variables. Results are deterministic for a fixed edge order. Throws ContractViolation
/// for an odd node count and InfeasibleError when no perfect matching exists.
PerfectMatching min_weight_perfect_matching(size_t num_nodes, std::span<const WeightedEdge> edges);

/// Complete-graph form: weights[i][j] for i != j (symmetric).
PerfectMatching blossom_mwpm(const std::vector<std::vector<int64_t>> &weights);

}  // namespace surfcorr

#endif
