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

#include "surfcorr/equivalence.h"

#include <set>
#include <sstream>

#include "surfcorr/errors.h"
#include "surfcorr/gf2.h"

namespace surfcorr {

namespace {

// Finds e in span(E) with e * logical in the stabilizer group, if any.
std::optional<PauliOp> coset_representative_in_errors(const std::vector<PauliOp> &error_basis,
                                                      const std::vector<PauliOp> &stabilizer_basis,
                                                      const PauliOp &logical) {
    size_t n = logical.num_qubits();
    Gf2Eliminator elim(2 * n, error_basis.size() + stabilizer_basis.size() + 1);
    for (const auto &e : error_basis) {
        elim.insert(e.symplectic_row());
    }
    for (const auto &g : stabilizer_basis) {
        elim.insert(g.symplectic_row());
    }
    BitVec target = logical.symplectic_row();
    BitVec combo = elim.reduce(target);
    if (target.any()) {
        return std::nullopt;
    }
    PauliOp witness(n);
    for (size_t i : combo.ones()) {
        if (i < error_basis.size()) {
            witness *= error_basis[i];
        }
    }
    return witness;
}

}  // namespace

SymmetryReport compute_s_sys(const NoiseModel &model, const PlanarCode &code) {
    size_t n = code.num_qubits();
    SymmetryReport report;
    report.descriptor = model.descriptor();
    if (model.descriptor().family == NoiseFamily::kType1 && model.descriptor().k > 0) {
        report.d_mod_k = code.distance() % model.descriptor().k;
    }
    report.error_span = GroupSpan(n);
    for (const auto &m : model.mechanisms()) {
        if (m.pauli.num_qubits() != n) {
            throw ContractViolation("compute_s_sys: mechanism Pauli does not act on the code's qubits");
        }
        report.error_span.add(m.pauli);
    }
    auto generators = code.stabilizer_generators();
    report.s_sys = centralizer_restricted(report.error_span, generators);

    const auto &stab = code.stabilizer_span();
    bool outside_stabilizers = false;
    for (const auto &b : report.s_sys.basis()) {
        if (!stab.contains(b)) {
            outside_stabilizers = true;
            break;
        }
    }

    // One affine solve per logical class, preferring the bare logical when it is itself an error.
    PauliOp y = multiply(code.logical_x(), code.logical_z());
    for (const PauliOp *logical : std::initializer_list<const PauliOp *>{&code.logical_z(), &code.logical_x(), &y}) {
        if (report.error_span.contains(*logical)) {
            report.witness = *logical;
            break;
        }
        auto w = coset_representative_in_errors(report.error_span.basis(), stab.basis(), *logical);
        if (w) {
            report.witness = std::move(w);
            break;
        }
    }
    report.contains_logical = report.witness.has_value();
    if (report.contains_logical != outside_stabilizers) {
        throw std::logic_error("compute_s_sys: centralizer intersection and coset solve disagree");
    }
    if (report.witness) {
        report.witness_class = logical_class(stab, code.logicals(), *report.witness);
        if (*report.witness_class == LogicalClass::kStabilizer) {
            throw std::logic_error("compute_s_sys: witness classified as stabilizer");
        }
    }
    return report;
}

std::string SymmetryReport::str(const PlanarCode &code) const {
    std::ostringstream out;
    out << "family: " << to_string(descriptor.family) << "\n";
    out << "d: " << code.distance() << "\n";
    if (descriptor.k > 0) {
        out << "k: " << descriptor.k << "\n";
        out << "d_mod_k: " << d_mod_k << "\n";
    }
    out << "error_span_rank: " << error_span.rank() << "\n";
    out << "s_sys_rank: " << s_sys.rank() << "\n";
    out << "contains_logical: " << (contains_logical ? "true" : "false") << "\n";
    out << "witness:";
    if (witness) {
        for (size_t q : witness->support()) {
            char p = witness->x().get(q) ? (witness->z().get(q) ? 'Y' : 'X') : 'Z';
            out << " " << p << code.data_coords()[q].str();
        }
        out << "\n";
        out << "witness_class: " << to_string(*witness_class) << "\n";
    } else {
        out << " none\n";
    }
    return out.str();
}

PauliOp plaquette_block_product(const PlanarCode &code, int a0, int b0, int rows, int cols) {
    PauliOp product(code.num_qubits());
    for (int a = a0; a < a0 + rows; ++a) {
        for (int b = b0; b < b0 + cols; ++b) {
            product *= code.check(code.check_at(2 * a + 1, 2 * b)).op;
        }
    }
    return product;
}

bool verify_square_symmetry_elements(const PlanarCode &code, const NoiseModel &model, int k) {
    int d = code.distance();
    if (k < 1 || k > d) {
        throw ContractViolation("verify_square_symmetry_elements: k out of range");
    }
    GroupSpan errors(code.num_qubits());
    for (const auto &m : model.mechanisms()) {
        errors.add(m.pauli);
    }
    const auto &stab = code.stabilizer_span();
    auto member_of_both = [&](const PauliOp &op) { return errors.contains(op) && stab.contains(op); };
    if (k == d) {
        // Plaquettes form d-1 rows of d; the degenerate block takes all of them.
        return member_of_both(plaquette_block_product(code, 0, 0, d - 1, d));
    }
    // Plaquette (a, b) sits at (2a+1, 2b); weight-4 plaquettes have 1 <= b <= d-2.
    for (int a0 = 0; a0 + k <= d - 1; ++a0) {
        for (int b0 = 1; b0 + k <= d - 1; ++b0) {
            if (!member_of_both(plaquette_block_product(code, a0, b0, k, k))) {
                return false;
            }
        }
    }
    return true;
}

std::optional<bool> lemma1_check(const NoiseModel &model) {
    std::vector<NoiseModel> parts;
    try {
        parts = decompose_by_components(model);
    } catch (const StructuralError &) {
        return std::nullopt;
    }
    std::set<uint32_t> seen;
    for (const auto &part : parts) {
        for (uint32_t det : part.detector_support()) {
            if (!seen.insert(det).second) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace surfcorr
