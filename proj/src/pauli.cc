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

#include "surfcorr/pauli.h"

#include "surfcorr/errors.h"
#include "surfcorr/gf2.h"

namespace surfcorr {

namespace {

void require_same_size(const PauliOp &a, const PauliOp &b, const char *what) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ContractViolation(std::string(what) + ": qubit count mismatch (" + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()) + ")");
    }
}

// Elimination rows use a word-aligned layout: x in words [0, W), z in words [W, 2W).
size_t padded_width(size_t n) {
    return 128 * ((n + 63) / 64);
}

BitVec padded_row(const PauliOp &op) {
    size_t words = op.x().num_words();
    BitVec row(128 * words);
    auto out = row.words();
    auto xw = op.x().words();
    auto zw = op.z().words();
    std::copy(xw.begin(), xw.end(), out.begin());
    std::copy(zw.begin(), zw.end(), out.begin() + words);
    return row;
}

PauliOp from_padded_row(const BitVec &row, size_t n, size_t word_offset = 0) {
    PauliOp op(n);
    size_t words = op.x().num_words();
    auto in = row.words();
    std::copy(in.begin() + word_offset, in.begin() + word_offset + words, op.x().words().begin());
    std::copy(in.begin() + word_offset + words, in.begin() + word_offset + 2 * words, op.z().words().begin());
    return op;
}

}  // namespace

PauliOp::PauliOp(BitVec x, BitVec z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) {
        throw ContractViolation("PauliOp masks must have equal length");
    }
}

PauliOp PauliOp::x_on(size_t num_qubits, std::span<const size_t> qubits) {
    PauliOp op(num_qubits);
    op.x_ = BitVec::from_indices(num_qubits, qubits);
    return op;
}

PauliOp PauliOp::z_on(size_t num_qubits, std::span<const size_t> qubits) {
    PauliOp op(num_qubits);
    op.z_ = BitVec::from_indices(num_qubits, qubits);
    return op;
}

PauliOp PauliOp::from_string(std::string_view text) {
    PauliOp op(text.size());
    for (size_t q = 0; q < text.size(); ++q) {
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                op.x_.set(q, true);
                break;
            case 'Z':
                op.z_.set(q, true);
                break;
            case 'Y':
                op.x_.set(q, true);
                op.z_.set(q, true);
                break;
            default:
                throw ContractViolation("unrecognized Pauli character '" + std::string(1, text[q]) + "'");
        }
    }
    return op;
}

size_t PauliOp::weight() const {
    size_t total = 0;
    auto xw = x_.words();
    auto zw = z_.words();
    for (size_t i = 0; i < xw.size(); ++i) {
        total += std::popcount(xw[i] | zw[i]);
    }
    return total;
}

std::vector<size_t> PauliOp::support() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < num_qubits(); ++q) {
        if (x_.get(q) || z_.get(q)) {
            out.push_back(q);
        }
    }
    return out;
}

PauliOp &PauliOp::operator*=(const PauliOp &other) {
    require_same_size(*this, other, "multiply");
    x_ ^= other.x_;
    z_ ^= other.z_;
    return *this;
}

BitVec PauliOp::symplectic_row() const {
    size_t n = num_qubits();
    BitVec row(2 * n);
    row.copy_bits(x_, 0, 0, n);
    row.copy_bits(z_, 0, n, n);
    return row;
}

PauliOp PauliOp::from_symplectic_row(const BitVec &row, size_t num_qubits) {
    if (row.size() != 2 * num_qubits) {
        throw ContractViolation("symplectic row has wrong width");
    }
    return PauliOp(row.slice(0, num_qubits), row.slice(num_qubits, num_qubits));
}

std::string PauliOp::str() const {
    std::string out(num_qubits(), 'I');
    for (size_t q = 0; q < num_qubits(); ++q) {
        bool x = x_.get(q);
        bool z = z_.get(q);
        out[q] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return out;
}

bool commutes(const PauliOp &a, const PauliOp &b) {
    require_same_size(a, b, "commutes");
    auto ax = a.x().words();
    auto az = a.z().words();
    auto bx = b.x().words();
    auto bz = b.z().words();
    uint64_t acc = 0;
    for (size_t i = 0; i < ax.size(); ++i) {
        acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    }
    return (std::popcount(acc) & 1) == 0;
}

PauliOp multiply(const PauliOp &a, const PauliOp &b) {
    PauliOp out = a;
    out *= b;
    return out;
}

GroupSpan GroupSpan::from_generators(size_t num_qubits, std::span<const PauliOp> generators) {
    GroupSpan span(num_qubits);
    for (const auto &g : generators) {
        span.add(g);
    }
    return span;
}

bool GroupSpan::add(const PauliOp &op) {
    if (op.num_qubits() != num_qubits_) {
        throw ContractViolation("GroupSpan::add: qubit count mismatch");
    }
    BitVec v = padded_row(op);
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (v.get(pivots_[r])) {
            v ^= rows_[r];
        }
    }
    size_t pivot = v.first_one();
    if (pivot == v.size()) {
        return false;
    }
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].get(pivot)) {
            rows_[r] ^= v;
            basis_[r] = from_padded_row(rows_[r], num_qubits_);
        }
    }
    basis_.push_back(from_padded_row(v, num_qubits_));
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

PauliOp GroupSpan::reduce(const PauliOp &op) const {
    if (op.num_qubits() != num_qubits_) {
        throw ContractViolation("GroupSpan::reduce: qubit count mismatch");
    }
    BitVec v = padded_row(op);
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (v.get(pivots_[r])) {
            v ^= rows_[r];
        }
    }
    return from_padded_row(v, num_qubits_);
}

bool GroupSpan::contains(const PauliOp &op) const {
    return reduce(op).is_identity();
}

bool in_span(const PauliOp &op, const GroupSpan &span) {
    return span.contains(op);
}

GroupSpan span_intersection(const GroupSpan &a, const GroupSpan &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ContractViolation("span_intersection: qubit count mismatch");
    }
    size_t n = a.num_qubits();
    size_t w = padded_width(n);
    // Rows [u | u] for u in a and [v | 0] for v in b; rows with a vanishing left half
    // after elimination carry a basis of the intersection in their right half.
    Gf2Eliminator elim(2 * w);
    auto stacked = [&](const PauliOp &left, const PauliOp *right) {
        BitVec row(2 * w);
        BitVec l = padded_row(left);
        std::copy(l.words().begin(), l.words().end(), row.words().begin());
        if (right) {
            BitVec r = padded_row(*right);
            std::copy(r.words().begin(), r.words().end(), row.words().begin() + w / 64);
        }
        return row;
    };
    for (const auto &u : a.basis()) {
        elim.insert(stacked(u, &u));
    }
    for (const auto &v : b.basis()) {
        elim.insert(stacked(v, nullptr));
    }
    GroupSpan out(n);
    for (size_t r = 0; r < elim.rank(); ++r) {
        if (elim.pivots()[r] >= w) {
            out.add(from_padded_row(elim.rows()[r], n, w / 64));
        }
    }
    return out;
}

GroupSpan centralizer_restricted(const GroupSpan &span, std::span<const PauliOp> generators) {
    for (const auto &g : generators) {
        if (g.num_qubits() != span.num_qubits()) {
            throw ContractViolation("centralizer_restricted: qubit count mismatch");
        }
    }
    const auto &basis = span.basis();
    // Row i holds the commutation pattern of basis element i against every generator;
    // kernel combinations of these rows are exactly the commuting sub-span.
    Gf2Eliminator elim(generators.size(), basis.size());
    GroupSpan out(span.num_qubits());
    for (const auto &b : basis) {
        BitVec pattern(generators.size());
        for (size_t j = 0; j < generators.size(); ++j) {
            if (!commutes(b, generators[j])) {
                pattern.set(j, true);
            }
        }
        auto result = elim.insert(pattern);
        if (!result.independent) {
            PauliOp element(span.num_qubits());
            for (size_t i : result.combination.ones()) {
                element *= basis[i];
            }
            out.add(element);
        }
    }
    return out;
}

std::string_view to_string(LogicalClass c) {
    switch (c) {
        case LogicalClass::kStabilizer:
            return "stabilizer";
        case LogicalClass::kLogicalX:
            return "logical-X";
        case LogicalClass::kLogicalZ:
            return "logical-Z";
        case LogicalClass::kLogicalY:
            return "logical-Y";
    }
    return "?";
}

LogicalClass logical_class_unchecked(const LogicalPair &logicals, const PauliOp &residual) {
    bool anti_x = !commutes(residual, logicals.x);
    bool anti_z = !commutes(residual, logicals.z);
    if (anti_x && anti_z) {
        return LogicalClass::kLogicalY;
    }
    if (anti_x) {
        return LogicalClass::kLogicalZ;
    }
    if (anti_z) {
        return LogicalClass::kLogicalX;
    }
    return LogicalClass::kStabilizer;
}

LogicalClass logical_class(const GroupSpan &stabilizers, const LogicalPair &logicals, const PauliOp &residual) {
    const auto &basis = stabilizers.basis();
    for (size_t i = 0; i < basis.size(); ++i) {
        if (!commutes(residual, basis[i])) {
            throw ContractViolation("residual has nonzero syndrome: anticommutes with stabilizer " +
                                    std::to_string(i));
        }
    }
    return logical_class_unchecked(logicals, residual);
}

}  // namespace surfcorr
