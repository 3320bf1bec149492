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

#ifndef SURFCORR_FRAME_SIM_H
#define SURFCORR_FRAME_SIM_H

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surfcorr/circuit.h"
#include "surfcorr/noise_model.h"
#include "surfcorr/rng.h"

namespace surfcorr {

/// One elementary fault: outcome `outcome` of channel `group` of noise-bearing instruction `instruction`.
/// Two-qubit outcomes 0..14 encode the Pauli pair (o+1)/4, (o+1)%4 with 0=I, 1=X, 2=Y, 3=Z.
struct FaultSite {
    uint32_t instruction = 0;
    uint32_t group = 0;
    uint32_t outcome = 0;
    double probability = 0;
};

/// Every fault with non-zero probability, in circuit order.
std::vector<FaultSite> enumerate_fault_sites(const CliffordCircuit &circuit);
std::string describe_fault(const CliffordCircuit &circuit, const FaultSite &site);

/// 64 shots packed bitwise: bit s of each word belongs to shot s.
struct ShotBatch {
    std::vector<uint64_t> detectors;
    uint64_t observable = 0;
};

class FrameSimulator {
   public:
    explicit FrameSimulator(const CliffordCircuit &circuit);

    /// Samples all noise channels independently for 64 shots.
    void sample_batch(Rng &rng, ShotBatch &out);
    /// Injects faults[j] alone in shot j (at most 64), with all random noise off.
    void forced_batch(std::span<const FaultSite> faults, ShotBatch &out);
    /// Injects every fault of lanes[j] together in shot j (at most 64 lanes).
    void forced_sets(std::span<const std::vector<FaultSite>> lanes, ShotBatch &out);

   private:
    const CliffordCircuit &circuit_;
    std::vector<uint32_t> measurement_base_;
    std::vector<double> log_keep_;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
    std::vector<uint64_t> record_;

    template <typename Inject>
    void run(Inject &&inject, ShotBatch &out);
    void run_forced(std::vector<std::pair<FaultSite, uint64_t>> injections, ShotBatch &out);
    void apply_fault(size_t inst, uint32_t group, uint32_t outcome, uint64_t mask);
};

struct FrameSamples {
    /// Detector bits of each shot.
    std::vector<BitVec> detectors;
    std::vector<bool> observable_flips;
};

FrameSamples pauli_frame_sample(const CliffordCircuit &circuit, size_t shots, Rng &rng);

/// Fired detectors of one shot, ascending.
void unpack_shot(const ShotBatch &batch, size_t shot, std::vector<uint32_t> &fired);

struct CircuitErrorModel {
    /// Each distinct symptom once, probabilities merged by parity.
    NoiseModel raw;
    /// X-detector halves of every symptom (these carry the observable), at most 2 detectors each.
    NoiseModel x_graph;
    /// Z-detector halves, at most 2 detectors each.
    NoiseModel z_graph;
    std::vector<CheckType> detector_types;
};

CircuitErrorModel extract_mechanisms(const CliffordCircuit &circuit, std::shared_ptr<const PlanarCode> code = nullptr);

}  // namespace surfcorr

#endif
