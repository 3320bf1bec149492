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

#include "surfcorr/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "surfcorr/blossom.h"
#include "surfcorr/errors.h"

namespace surfcorr {

namespace {

constexpr int64_t kUnreached = std::numeric_limits<int64_t>::max();
constexpr uint32_t kBoundaryPlaceholder = std::numeric_limits<uint32_t>::max();

using QueueEntry = std::pair<int64_t, uint32_t>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

std::string support_text(const std::vector<uint32_t> &dets) {
    std::string out;
    for (uint32_t d : dets) {
        out += (out.empty() ? "D" : " D") + std::to_string(d);
    }
    return out;
}

}  // namespace

int64_t quantize_weight(double probability) {
    if (!(probability > 0) || !(probability < 0.5)) {
        throw ContractViolation("matching weight needs 0 < p < 0.5, got " + std::to_string(probability));
    }
    return std::llround(std::log((1 - probability) / probability) * kWeightScale);
}

DetectorGraph DetectorGraph::build(const NoiseModel &model) {
    DetectorGraph g;
    g.num_detectors_ = model.num_detectors();
    g.num_qubits_ = model.code() ? model.code()->num_qubits() : 0;
    const auto &mechs = model.mechanisms();
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> edge_of_pair;
    for (size_t i = 0; i < mechs.size(); ++i) {
        const auto &m = mechs[i];
        if (m.probability == 0) {
            continue;
        }
        if (m.detectors.size() > 2) {
            throw ContractViolation("mechanism " + std::to_string(i) + " has " + std::to_string(m.detectors.size()) +
                                    " detectors (" + support_text(m.detectors) + "); decompose it first");
        }
        int64_t w = quantize_weight(m.probability);
        if (m.detectors.empty()) {
            ++g.num_undetectable_;
            continue;
        }
        uint32_t a = m.detectors[0];
        uint32_t b = m.detectors.size() == 2 ? m.detectors[1] : kBoundaryPlaceholder;
        auto [it, inserted] = edge_of_pair.try_emplace({a, b}, static_cast<uint32_t>(g.edges_.size()));
        if (inserted) {
            GraphEdge e;
            e.u = a;
            e.v = b;
            e.weight = w;
            e.real_weight = std::log((1 - m.probability) / m.probability);
            e.mechanism = static_cast<uint32_t>(i);
            e.merged = {static_cast<uint32_t>(i)};
            g.edges_.push_back(std::move(e));
        } else {
            GraphEdge &e = g.edges_[it->second];
            e.merged.push_back(static_cast<uint32_t>(i));
            if (w < e.weight) {
                e.weight = w;
                e.real_weight = std::log((1 - m.probability) / m.probability);
                e.mechanism = static_cast<uint32_t>(i);
            }
        }
    }

    // Components over detector-detector edges.
    size_t n = g.num_detectors_;
    std::vector<uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<char> active(n, 0);
    for (const auto &e : g.edges_) {
        active[e.u] = 1;
        if (e.v != kBoundaryPlaceholder) {
            active[e.v] = 1;
            uint32_t ru = find(e.u);
            uint32_t rv = find(e.v);
            if (ru != rv) {
                parent[std::max(ru, rv)] = std::min(ru, rv);
            }
        }
    }
    g.component_of_.assign(n, -1);
    g.local_index_.assign(n, 0);
    std::vector<int> component_of_root(n, -1);
    for (uint32_t d = 0; d < n; ++d) {
        if (!active[d]) {
            continue;
        }
        g.active_.push_back(d);
        uint32_t r = find(d);
        if (component_of_root[r] < 0) {
            component_of_root[r] = static_cast<int>(g.components_.size());
            g.components_.emplace_back();
        }
        int c = component_of_root[r];
        g.component_of_[d] = c;
        g.local_index_[d] = static_cast<uint32_t>(g.components_[c].nodes.size());
        g.components_[c].nodes.push_back(d);
    }
    for (auto &e : g.edges_) {
        if (e.v != kBoundaryPlaceholder) {
            continue;
        }
        auto &comp = g.components_[g.component_of_[e.u]];
        if (comp.boundary_node < 0) {
            comp.boundary_node = static_cast<int64_t>(n + g.num_boundaries_++);
        }
        e.v = static_cast<uint32_t>(comp.boundary_node);
    }

    // Adjacency in edge order.
    size_t num_nodes = g.num_nodes();
    g.arc_offsets_.assign(num_nodes + 1, 0);
    for (const auto &e : g.edges_) {
        ++g.arc_offsets_[e.u + 1];
        ++g.arc_offsets_[e.v + 1];
    }
    for (size_t v = 0; v < num_nodes; ++v) {
        g.arc_offsets_[v + 1] += g.arc_offsets_[v];
    }
    g.arcs_.resize(g.arc_offsets_[num_nodes]);
    std::vector<uint32_t> fill(g.arc_offsets_.begin(), g.arc_offsets_.end() - 1);
    for (uint32_t k = 0; k < g.edges_.size(); ++k) {
        const auto &e = g.edges_[k];
        g.arcs_[fill[e.u]++] = {e.v, k};
        g.arcs_[fill[e.v]++] = {e.u, k};
    }

    // Shortest paths to the boundary, one search per component.
    g.boundary_dist_.assign(n, -1);
    g.boundary_pred_.assign(n, -1);
    std::vector<int64_t> dist(num_nodes, kUnreached);
    for (const auto &comp : g.components_) {
        if (comp.boundary_node < 0) {
            continue;
        }
        MinQueue queue;
        auto src = static_cast<uint32_t>(comp.boundary_node);
        dist[src] = 0;
        queue.push({0, src});
        while (!queue.empty()) {
            auto [du, u] = queue.top();
            queue.pop();
            if (du != dist[u]) {
                continue;
            }
            for (const Arc &a : g.arcs_of(u)) {
                int64_t nd = du + g.edges_[a.edge].weight;
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    g.boundary_pred_[a.to] = a.edge;
                    queue.push({nd, a.to});
                }
            }
        }
        for (uint32_t d : comp.nodes) {
            g.boundary_dist_[d] = dist[d];
        }
    }

    g.mechanism_paulis_.reserve(mechs.size());
    g.mechanism_masks_.reserve(mechs.size());
    for (const auto &m : mechs) {
        g.mechanism_paulis_.push_back(m.pauli);
        g.mechanism_masks_.push_back(m.logical_mask);
    }
    return g;
}

int64_t DetectorGraph::boundary_distance(uint32_t detector) const {
    return boundary_dist_.at(detector);
}

MatchingResult DetectorGraph::decode(const BitVec &syndrome) const {
    if (syndrome.size() != num_detectors_) {
        throw ContractViolation("syndrome has " + std::to_string(syndrome.size()) + " bits, graph has " +
                                std::to_string(num_detectors_) + " detectors");
    }
    std::vector<uint32_t> defects;
    for (size_t i : syndrome.ones()) {
        defects.push_back(static_cast<uint32_t>(i));
    }
    return decode_defects(defects);
}

MatchingResult DetectorGraph::decode_defects(std::span<const uint32_t> defects) const {
    MatchingResult result;
    result.correction = PauliOp(num_qubits_);
    std::vector<std::vector<uint32_t>> by_component(components_.size());
    for (size_t i = 0; i < defects.size(); ++i) {
        uint32_t d = defects[i];
        if (d >= num_detectors_) {
            throw ContractViolation("defect " + std::to_string(d) + " is outside the detector range");
        }
        if (i > 0 && d <= defects[i - 1]) {
            throw ContractViolation("defects must be strictly ascending");
        }
        if (component_of_[d] < 0) {
            throw InfeasibleError("detector " + std::to_string(d) + " fired but no mechanism can trigger it");
        }
        by_component[component_of_[d]].push_back(d);
    }
    std::vector<uint32_t> edge_uses(edges_.size(), 0);
    for (size_t c = 0; c < components_.size(); ++c) {
        if (!by_component[c].empty()) {
            decode_component(c, by_component[c], result, edge_uses);
        }
    }

    BitVec check(num_detectors_);
    for (uint32_t k = 0; k < edges_.size(); ++k) {
        if (!(edge_uses[k] & 1)) {
            continue;
        }
        const GraphEdge &e = edges_[k];
        check.flip(e.u);
        if (!is_boundary(e.v)) {
            check.flip(e.v);
        }
        result.mechanisms.push_back(e.mechanism);
        if (mechanism_paulis_[e.mechanism].num_qubits() == num_qubits_) {
            result.correction *= mechanism_paulis_[e.mechanism];
        }
        result.logical_mask ^= mechanism_masks_[e.mechanism];
    }
    std::sort(result.mechanisms.begin(), result.mechanisms.end());
    for (uint32_t d : defects) {
        check.flip(d);
    }
    if (check.any()) {
        throw InvariantViolation("matching correction leaves detector " + std::to_string(check.first_one()) +
                                 " unexplained");
    }
    std::sort(result.pairs.begin(), result.pairs.end(), [](const MatchedPair &a, const MatchedPair &b) {
        return a.first < b.first;
    });
    return result;
}

void DetectorGraph::decode_component(size_t c, std::span<const uint32_t> defects, MatchingResult &result,
                                     std::vector<uint32_t> &edge_uses) const {
    const Component &comp = components_[c];
    const bool has_boundary = comp.boundary_node >= 0;
    const size_t m = defects.size();
    const size_t size = comp.nodes.size();
    if (!has_boundary && m % 2 == 1) {
        throw InfeasibleError("component " + std::to_string(c) + " has no boundary and an odd number (" +
                              std::to_string(m) + ") of defects");
    }

    // A pair (i, j) is only useful when d_ij < b_i + b_j <= 2 max(b_i, b_j), so each search can stop
    // at twice its own boundary distance; the endpoint farther from the boundary finds the pair.
    std::vector<int64_t> pair_dist(m * m, kUnreached);
    std::vector<uint32_t> pair_source(m * m, 0);
    std::vector<int64_t> pred(m * size, -1);
    std::vector<int64_t> dist(size);
    std::vector<int> defect_slot(size, -1);
    for (size_t i = 0; i < m; ++i) {
        defect_slot[local_index_[defects[i]]] = static_cast<int>(i);
    }
    MinQueue queue;
    for (size_t i = 0; i < m; ++i) {
        int64_t cutoff = has_boundary ? 2 * boundary_dist_[defects[i]] : kUnreached;
        std::fill(dist.begin(), dist.end(), kUnreached);
        int64_t *pi = pred.data() + i * size;
        dist[local_index_[defects[i]]] = 0;
        queue.push({0, defects[i]});
        while (!queue.empty()) {
            auto [du, u] = queue.top();
            queue.pop();
            uint32_t lu = local_index_[u];
            if (du != dist[lu]) {
                continue;
            }
            if (int j = defect_slot[lu]; j >= 0 && static_cast<size_t>(j) != i) {
                size_t a = std::min<size_t>(i, j);
                size_t b = std::max<size_t>(i, j);
                if (du < pair_dist[a * m + b]) {
                    pair_dist[a * m + b] = du;
                    pair_source[a * m + b] = static_cast<uint32_t>(i);
                }
            }
            for (const Arc &a : arcs_of(u)) {
                if (is_boundary(a.to)) {
                    continue;
                }
                int64_t nd = du + edges_[a.edge].weight;
                if (nd >= cutoff) {
                    continue;
                }
                uint32_t lv = local_index_[a.to];
                if (nd < dist[lv]) {
                    dist[lv] = nd;
                    pi[lv] = a.edge;
                    queue.push({nd, a.to});
                }
            }
        }
    }

    // Defects linked by useful pairs form clusters that can be matched independently.
    auto useful = [&](size_t i, size_t j) {
        int64_t dij = pair_dist[i * m + j];
        if (dij == kUnreached) {
            return false;
        }
        return !has_boundary || dij < boundary_dist_[defects[i]] + boundary_dist_[defects[j]];
    };
    std::vector<uint32_t> cluster(m);
    std::iota(cluster.begin(), cluster.end(), 0);
    auto find = [&](uint32_t x) {
        while (cluster[x] != x) {
            cluster[x] = cluster[cluster[x]];
            x = cluster[x];
        }
        return x;
    };
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            if (useful(i, j)) {
                uint32_t ri = find(static_cast<uint32_t>(i));
                uint32_t rj = find(static_cast<uint32_t>(j));
                if (ri != rj) {
                    cluster[std::max(ri, rj)] = std::min(ri, rj);
                }
            }
        }
    }
    std::vector<std::vector<uint32_t>> members(m);
    for (uint32_t i = 0; i < m; ++i) {
        members[find(i)].push_back(i);
    }

    // mate[i] is a defect slot, or m for the boundary.
    std::vector<uint32_t> mate(m, static_cast<uint32_t>(m));
    std::vector<WeightedEdge> graph;
    for (const auto &group : members) {
        size_t k = group.size();
        if (k == 0) {
            continue;
        }
        if (k == 1 && has_boundary) {
            continue;
        }
        // Node a < k is defect group[a]; node k + a is its boundary twin.
        graph.clear();
        for (size_t a = 0; a < k; ++a) {
            uint32_t i = group[a];
            if (has_boundary) {
                graph.push_back({static_cast<uint32_t>(a), static_cast<uint32_t>(k + a), boundary_dist_[defects[i]]});
            }
            for (size_t c = a + 1; c < k; ++c) {
                uint32_t j = group[c];
                if (!useful(i, j)) {
                    continue;
                }
                if (has_boundary) {
                    graph.push_back({static_cast<uint32_t>(k + a), static_cast<uint32_t>(k + c), 0});
                }
                graph.push_back({static_cast<uint32_t>(a), static_cast<uint32_t>(c), pair_dist[i * m + j]});
            }
        }
        PerfectMatching pm = min_weight_perfect_matching(has_boundary ? 2 * k : k, graph);
        for (size_t a = 0; a < k; ++a) {
            if (pm.mate[a] < k) {
                mate[group[a]] = group[pm.mate[a]];
            }
        }
    }

    auto use = [&](uint32_t edge) {
        ++edge_uses[edge];
        result.total_weight += edges_[edge].real_weight;
    };
    for (size_t i = 0; i < m; ++i) {
        uint32_t partner = mate[i];
        if (partner == m) {
            uint32_t node = defects[i];
            while (!is_boundary(node)) {
                auto e = static_cast<uint32_t>(boundary_pred_[node]);
                use(e);
                node = other_end(e, node);
            }
            int64_t w = boundary_dist_[defects[i]];
            result.pairs.push_back({defects[i], std::nullopt, w});
            result.total_weight_units += w;
        } else if (i < partner) {
            uint32_t src = pair_source[i * m + partner];
            uint32_t dst = src == i ? partner : static_cast<uint32_t>(i);
            const int64_t *pi = pred.data() + src * size;
            uint32_t node = defects[dst];
            while (node != defects[src]) {
                auto e = static_cast<uint32_t>(pi[local_index_[node]]);
                use(e);
                node = other_end(e, node);
            }
            int64_t w = pair_dist[i * m + partner];
            result.pairs.push_back({defects[i], defects[partner], w});
            result.total_weight_units += w;
        }
    }
}

}  // namespace surfcorr
