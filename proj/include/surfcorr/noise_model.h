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

#ifndef SURFCORR_NOISE_MODEL_H
#define SURFCORR_NOISE_MODEL_H

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surfcorr/planar_code.h"
#include "surfcorr/rng.h"

namespace surfcorr {

enum class NoiseFamily { kIid, kType1, kType2, kMixed, kCircuit };
std::string_view to_string(NoiseFamily family);
/// Accepts "iid", "type1", "type2", "mixed", "circuit".
NoiseFamily parse_family(std::string_view text);

/// Structured name of a model: {family, d, k?, p}. `k` is 0 when the family has no length.
struct ModelDescriptor {
    NoiseFamily family = NoiseFamily::kIid;
    int d = 0;
    int k = 0;
    double p = 0;

    /// JSON object record such as {"d":5,"family":"type1","k":2,"p":0.1}.
    std::string to_record() const;
    static ModelDescriptor from_record(std::string_view text);
    bool operator==(const ModelDescriptor &) const = default;
};

/// Observable bits carried by a mechanism.
/// Bit 0 (L0): the Pauli anticommutes with the X logical, i.e. it flips the X-basis logical readout.
/// Bit 1 (L1): the Pauli anticommutes with the Z logical.
inline constexpr uint64_t kFlipsLogicalXReadout = 1;
inline constexpr uint64_t kFlipsLogicalZReadout = 2;

struct ErrorMechanism {
    double probability = 0;
    /// Simultaneous error applied when the mechanism fires. Empty (zero qubits) for
    /// spacetime mechanisms extracted from circuits.
    PauliOp pauli;
    /// Triggered detector indices, ascending.
    std::vector<uint32_t> detectors;
    uint64_t logical_mask = 0;
};

/// A list of independently firing error mechanisms.
class NoiseModel {
   public:
    NoiseModel() = default;
    /// Mechanisms with identical (pauli, detectors, observables) are merged by odd-parity combination
    /// unless `merge_duplicates` is false.
    NoiseModel(ModelDescriptor descriptor, std::shared_ptr<const PlanarCode> code, size_t num_detectors,
               std::vector<ErrorMechanism> mechanisms, bool merge_duplicates = true);

    /// Derives detectors and observable bits of each Pauli from the code.
    static NoiseModel from_paulis(ModelDescriptor descriptor, std::shared_ptr<const PlanarCode> code,
                                  const std::vector<std::pair<PauliOp, double>> &paulis);

    const ModelDescriptor &descriptor() const { return descriptor_; }
    const std::shared_ptr<const PlanarCode> &code() const { return code_; }
    size_t num_detectors() const { return num_detectors_; }
    size_t size() const { return mechanisms_.size(); }
    const std::vector<ErrorMechanism> &mechanisms() const { return mechanisms_; }
    const ErrorMechanism &mechanism(size_t i) const { return mechanisms_.at(i); }

    /// Indices of the mechanisms that fire in one shot, ascending.
    void sample_fired(Rng &rng, std::vector<size_t> &fired) const;
    /// Product Pauli of one shot.
    PauliOp sample(Rng &rng) const;
    PauliOp pauli_of(std::span<const size_t> fired) const;
    /// Syndrome of a firing pattern, from the stored detector sets.
    BitVec syndrome_of(std::span<const size_t> fired) const;
    uint64_t logical_mask_of(std::span<const size_t> fired) const;

    /// All detectors touched by at least one mechanism, ascending.
    std::vector<uint32_t> detector_support() const;

    /// Same descriptor, code and detector space with a different mechanism list.
    NoiseModel with_mechanisms(std::vector<ErrorMechanism> mechanisms) const;

    /// One line per mechanism: `error(p) D<i> [D<j> ...] [L0] [L1]`.
    std::string to_dem() const;
    /// Parses the mechanism-list format, one mechanism per line. Text after '#' is ignored.
    static NoiseModel parse_dem(std::string_view text, size_t min_detectors = 0);

   private:
    ModelDescriptor descriptor_;
    std::shared_ptr<const PlanarCode> code_;
    size_t num_detectors_ = 0;
    std::vector<ErrorMechanism> mechanisms_;
};

/// Probability that an odd number of independent events fire.
double odd_parity_probability(std::span<const double> probabilities);

NoiseModel build_iid_z(std::shared_ptr<const PlanarCode> code, double p);
/// Horizontal Z^k windows on even rows and vertical Z^k windows on odd columns.
NoiseModel build_type1(std::shared_ptr<const PlanarCode> code, int k, double p1);
/// Z^2 on every diagonally adjacent data pair.
NoiseModel build_type2(std::shared_ptr<const PlanarCode> code, double p2);
/// Union of two models over the same code; the result has family kMixed.
NoiseModel combine_models(const NoiseModel &a, const NoiseModel &b);

/// Splits a single-family correlated model into sub-models with disjoint detector supports.
/// Components are ordered by their smallest detector.
std::vector<NoiseModel> decompose_by_components(const NoiseModel &model);

struct VirtualQubit {
    std::vector<uint32_t> detectors;
    double effective_probability = 0;
    /// Indices into the input model's mechanism list.
    std::vector<size_t> mechanisms;
};

/// Groups mechanisms with identical detector sets. Every group of two or more must multiply
/// to stabilizers; otherwise StructuralError is thrown.
std::vector<VirtualQubit> virtual_qubit_map(const NoiseModel &model);

}  // namespace surfcorr

#endif
