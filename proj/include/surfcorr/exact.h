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

#ifndef SURFCORR_EXACT_H
#define SURFCORR_EXACT_H

#include <array>
#include <functional>

#include "surfcorr/matching.h"

namespace surfcorr {

/// Largest mechanism count accepted by the enumeration routines.
inline constexpr size_t kMaxEnumeratedMechanisms = 20;

/// Maps a syndrome over the model's detectors to a correction.
using Decoder = std::function<PauliOp(const BitVec &)>;

Decoder mwpm_decoder(std::shared_ptr<const DetectorGraph> graph);

/// Probability that decoding leaves a stabilizer residual, summed over every firing pattern.
double success_probability_exact(const NoiseModel &model, const PlanarCode &code, const Decoder &decoder);

struct MlDecision {
    /// A correction in the most likely coset.
    PauliOp correction;
    /// Posterior mass per class, relative to a canonical error with the input syndrome.
    std::array<double, 4> class_probability{};
    LogicalClass best = LogicalClass::kStabilizer;
};

/// Maximum-likelihood coset decision by enumerating all firing patterns.
MlDecision decode_ml_bruteforce(const PlanarCode &code, const NoiseModel &model, const BitVec &syndrome);

/// Failure probability of the maximum-likelihood decoder, by one full enumeration.
double ml_failure_probability_exact(const NoiseModel &model, const PlanarCode &code);

}  // namespace surfcorr

#endif
