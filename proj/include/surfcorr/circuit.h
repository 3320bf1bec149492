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

#ifndef SURFCORR_CIRCUIT_H
#define SURFCORR_CIRCUIT_H

#include <cstdint>
#include <string>
#include <vector>

#include "surfcorr/planar_code.h"

namespace surfcorr {

enum class GateKind {
    kResetX,
    kResetZ,
    kH,
    kCx,
    kMeasureX,
    kMeasureZ,
    kTick,
    /// Independent two-qubit Pauli faults, each of the 15 non-identity outcomes with probability p/15.
    kDepolarize2,
    kZError,
    /// Z on every target at once.
    kCorrelatedZ,
};

std::string_view gate_name(GateKind kind);
bool is_noise(GateKind kind);

struct Instruction {
    GateKind kind = GateKind::kTick;
    /// Fault probability: per channel for noise, flip probability for measurements.
    double probability = 0;
    /// CX and two-qubit noise list (control, target) pairs.
    std::vector<uint32_t> targets;
};

struct DetectorSpec {
    CheckType type = CheckType::kX;
    uint32_t check = 0;
    /// Extraction round; the data-readout layer uses round = rounds.
    uint32_t round = 0;
    /// Measurement record indices whose parity forms the detector.
    std::vector<uint32_t> measurements;
};

class CliffordCircuit {
   public:
    size_t num_qubits = 0;
    size_t num_measurements = 0;
    std::vector<Instruction> instructions;
    std::vector<DetectorSpec> detectors;
    std::vector<uint32_t> observable;

    void append(GateKind kind, std::vector<uint32_t> targets, double probability = 0);
    size_t num_detectors() const { return detectors.size(); }
    /// Gate applications of a kind; a CORRELATED_Z instruction counts once.
    size_t count(GateKind kind) const;

    /// One instruction per line, e.g. `CX 13 0 14 2`, `MX(0.001) 13`, `DEPOLARIZE2(0.001) 13 0`,
    /// then `DETECTOR X <check> <round> : <records>` and `OBSERVABLE : <records>`.
    std::string str() const;
    static CliffordCircuit parse(std::string_view text);
};

/// X-basis memory: data prepared in |+>, `rounds` rounds of ancilla-based check measurement,
/// then a destructive X readout of the data. Data qubit q is qubit q; check i uses ancilla n + i.
CliffordCircuit build_memory_circuit(const PlanarCode &code, int rounds);

enum class CorrelatedFamily { kNone, kType1K2, kType2 };
std::string_view to_string(CorrelatedFamily family);

/// Adds depolarizing faults after CX layers, Z faults after resets and on idle qubits, measurement
/// flips, and one layer of correlated data faults at the end of every round.
CliffordCircuit attach_noise(const CliffordCircuit &circuit, const PlanarCode &code, double p, double p_cor,
                             CorrelatedFamily family);

}  // namespace surfcorr

#endif
