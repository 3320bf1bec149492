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

#ifndef SURFCORR_MATCHING_H
#define SURFCORR_MATCHING_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "surfcorr/noise_model.h"

namespace surfcorr {

/// Edge weights are ln((1-p)/p) quantized to integer units of 1/kWeightScale.
inline constexpr double kWeightScale = 1 << 20;

int64_t quantize_weight(double probability);

struct GraphEdge {
    /// Node ids; `v` may be a boundary node.
    uint32_t u = 0;
    uint32_t v = 0;
    int64_t weight = 0;
    double real_weight = 0;
    /// Mechanism applied when the edge is used (lowest index among the cheapest parallels).
    uint32_t mechanism = 0;
    /// Every mechanism merged into this edge, ascending.
    std::vector<uint32_t> merged;
};

struct MatchedPair {
    uint32_t first = 0;
    /// Partner detector, or nullopt for the boundary.
    std::optional<uint32_t> second;
    int64_t weight = 0;
};

struct MatchingResult {
    std::vector<MatchedPair> pairs;
    PauliOp correction;
    uint64_t logical_mask = 0;
    /// Sum of real edge weights along the chosen paths.
    double total_weight = 0;
    int64_t total_weight_units = 0;
    /// Mechanisms whose product forms the correction (each used an odd number of times), ascending.
    std::vector<uint32_t> mechanisms;
};

/// Weighted detector graph. Nodes [0, num_detectors) are detectors; each connected component
/// that touches the boundary gets its own boundary node after them.
class DetectorGraph {
   public:
    static DetectorGraph build(const NoiseModel &model);

    size_t num_detectors() const { return num_detectors_; }
    size_t num_nodes() const { return num_detectors_ + num_boundaries_; }
    size_t num_boundaries() const { return num_boundaries_; }
    const std::vector<GraphEdge> &edges() const { return edges_; }
    /// Detectors touched by at least one edge, ascending.
    const std::vector<uint32_t> &active_detectors() const { return active_; }
    size_t num_components() const { return components_.size(); }
    /// Component index of a detector, or -1 when it has no edges.
    int component_of(uint32_t detector) const { return component_of_[detector]; }
    /// Detectors of a component, ascending.
    const std::vector<uint32_t> &component_detectors(size_t c) const { return components_[c].nodes; }
    bool is_boundary(uint32_t node) const { return node >= num_detectors_; }
    /// Shortest distance from a detector to its component boundary, or -1.
    int64_t boundary_distance(uint32_t detector) const;
    size_t num_undetectable() const { return num_undetectable_; }

    MatchingResult decode(const BitVec &syndrome) const;
    MatchingResult decode_defects(std::span<const uint32_t> defects) const;

   private:
    struct Component {
        std::vector<uint32_t> nodes;
        int64_t boundary_node = -1;
    };
    struct Arc {
        uint32_t to;
        uint32_t edge;
    };

    size_t num_detectors_ = 0;
    size_t num_boundaries_ = 0;
    size_t num_qubits_ = 0;
    size_t num_undetectable_ = 0;
    std::vector<GraphEdge> edges_;
    std::vector<uint32_t> active_;
    std::vector<Component> components_;
    std::vector<int> component_of_;
    /// Position of a detector within its component's node list.
    std::vector<uint32_t> local_index_;
    std::vector<uint32_t> arc_offsets_;
    std::vector<Arc> arcs_;
    std::vector<int64_t> boundary_dist_;
    /// Edge toward the boundary on a shortest path, or -1.
    std::vector<int64_t> boundary_pred_;
    std::vector<PauliOp> mechanism_paulis_;
    std::vector<uint64_t> mechanism_masks_;

    std::span<const Arc> arcs_of(uint32_t node) const {
        return {arcs_.data() + arc_offsets_[node], arcs_.data() + arc_offsets_[node + 1]};
    }
    uint32_t other_end(uint32_t edge, uint32_t node) const {
        return edges_[edge].u == node ? edges_[edge].v : edges_[edge].u;
    }
    void decode_component(size_t c, std::span<const uint32_t> defects, MatchingResult &result,
                          std::vector<uint32_t> &edge_uses) const;
};

}  // namespace surfcorr

#endif
