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


#include "surfcorr/blossom.h"

#include <gtest/gtest.h>

#include <limits>

#include "surfcorr/errors.h"
#include "surfcorr/rng.h"

namespace surfcorr {
namespace {

// Minimum over all (n-1)!! pairings of a complete graph.
int64_t brute_force_min(const std::vector<std::vector<int64_t>> &w, std::vector<bool> &used) {
    size_t n = w.size();
    size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) return 0;
    used[first] = true;
    int64_t best = std::numeric_limits<int64_t>::max();
    for (size_t j = first + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = true;
        best = std::min(best, w[first][j] + brute_force_min(w, used));
        used[j] = false;
    }
    used[first] = false;
    return best;
}

void expect_valid(const PerfectMatching &m, const std::vector<std::vector<int64_t>> &w) {
    ASSERT_EQ(m.mate.size(), w.size());
    int64_t total = 0;
    for (size_t v = 0; v < w.size(); ++v) {
        ASSERT_LT(m.mate[v], w.size());
        EXPECT_EQ(m.mate[m.mate[v]], v);
        EXPECT_NE(m.mate[v], v);
        if (m.mate[v] > v) total += w[v][m.mate[v]];
    }
    EXPECT_EQ(total, m.total_weight);
}

TEST(BlossomTest, TwoNodes) {
    PerfectMatching m = blossom_mwpm({{0, 7}, {7, 0}});
    EXPECT_EQ(m.mate, (std::vector<uint32_t>{1, 0}));
    EXPECT_EQ(m.total_weight, 7);
}

TEST(BlossomTest, Square) {
    std::vector<std::vector<int64_t>> w = {{0, 1, 10, 1}, {1, 0, 1, 10}, {10, 1, 0, 1}, {1, 10, 1, 0}};
    PerfectMatching m = blossom_mwpm(w);
    EXPECT_EQ(m.total_weight, 2);
    expect_valid(m, w);
}

TEST(BlossomTest, Rejections) {
    std::vector<std::vector<int64_t>> odd = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    EXPECT_THROW(blossom_mwpm(odd), ContractViolation);
    std::vector<WeightedEdge> negative{{0, 1, -1}};
    EXPECT_THROW(min_weight_perfect_matching(2, negative), ContractViolation);
    std::vector<WeightedEdge> sparse{{0, 1, 1}};
    EXPECT_THROW(min_weight_perfect_matching(4, sparse), InfeasibleError);
}

TEST(BlossomTest, MatchesBruteForce) {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t n = 2 * (1 + rng() % 6);
        int64_t range = trial % 3 == 0 ? 5 : 1000;
        std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, 0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = static_cast<int64_t>(rng() % range);
        }
        PerfectMatching m = blossom_mwpm(w);
        std::vector<bool> used(n, false);
        ASSERT_EQ(m.total_weight, brute_force_min(w, used)) << "trial " << trial;
        expect_valid(m, w);
    }
}

TEST(BlossomTest, SparseMatchesBruteForce) {
    Rng rng(99);
    const int64_t missing = int64_t{1} << 40;
    for (int trial = 0; trial < 300; ++trial) {
        size_t n = 2 * (2 + rng() % 5);
        std::vector<WeightedEdge> edges;
        std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, missing));
        // A Hamiltonian path keeps every instance feasible.
        for (uint32_t i = 0; i + 1 < n; ++i) {
            int64_t x = static_cast<int64_t>(rng() % 100);
            edges.push_back({i, i + 1, x});
            w[i][i + 1] = w[i + 1][i] = x;
        }
        for (size_t e = 0; e < n; ++e) {
            uint32_t u = rng() % n, v = rng() % n;
            if (u == v) continue;
            int64_t x = static_cast<int64_t>(rng() % 100);
            edges.push_back({u, v, x});
            w[u][v] = w[v][u] = std::min(w[u][v], x);
        }
        PerfectMatching m = min_weight_perfect_matching(n, edges);
        std::vector<bool> used(n, false);
        EXPECT_EQ(m.total_weight, brute_force_min(w, used));
    }
}

TEST(BlossomTest, Deterministic) {
    Rng rng(5);
    std::vector<std::vector<int64_t>> w(10, std::vector<int64_t>(10, 0));
    for (size_t i = 0; i < 10; ++i) {
        for (size_t j = i + 1; j < 10; ++j) w[i][j] = w[j][i] = static_cast<int64_t>(rng() % 3);
    }
    EXPECT_EQ(blossom_mwpm(w).mate, blossom_mwpm(w).mate);
}

}  // namespace
}  // namespace surfcorr
