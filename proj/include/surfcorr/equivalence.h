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

#ifndef SURFCORR_EQUIVALENCE_H
#define SURFCORR_EQUIVALENCE_H

#include <optional>
#include <string>

#include "surfcorr/noise_model.h"

namespace surfcorr {

/// Intersection of a noise model's error group with the code centralizer, and whether
/// that intersection reaches outside the stabilizer group.
struct SymmetryReport {
    ModelDescriptor descriptor;
    GroupSpan error_span;
    GroupSpan s_sys;
    bool contains_logical = false;
    /// An element of the error group with zero syndrome and a non-stabilizer class.
    std::optional<PauliOp> witness;
    std::optional<LogicalClass> witness_class;
    /// d mod k for type-1 models, -1 otherwise.
    int d_mod_k = -1;

    /// Structured "key: value" text, witness support printed as coordinates.
    std::string str(const PlanarCode &code) const;
};

SymmetryReport compute_s_sys(const NoiseModel &model, const PlanarCode &code);

/// Checks that the product of every weight-4 k x k plaquette block lies in both the
/// error group and the stabilizer group. With k == d the single block is every plaquette.
bool verify_square_symmetry_elements(const PlanarCode &code, const NoiseModel &model, int k);

/// Products of the plaquettes in the k x k block whose top-left plaquette is (2*a0+1, 2*b0).
PauliOp plaquette_block_product(const PlanarCode &code, int a0, int b0, int rows, int cols);

/// Syndrome-disjointness of the connected components; nullopt when the model does not
/// satisfy the decomposition precondition.
std::optional<bool> lemma1_check(const NoiseModel &model);

}  // namespace surfcorr

#endif
