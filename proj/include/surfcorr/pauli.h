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

#ifndef SURFCORR_PAULI_H
#define SURFCORR_PAULI_H

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfcorr/bitvec.h"

namespace surfcorr {

/// An n-qubit Pauli operator modulo phase, stored as X and Z bit masks.
class PauliOp {
   public:
    PauliOp() = default;
    explicit PauliOp(size_t num_qubits) : x_(num_qubits), z_(num_qubits) {}
    PauliOp(BitVec x, BitVec z);

    static PauliOp x_on(size_t num_qubits, std::span<const size_t> qubits);
    static PauliOp z_on(size_t num_qubits, std::span<const size_t> qubits);
    /// Parses a dense string such as "XIZY".
    static PauliOp from_string(std::string_view text);

    size_t num_qubits() const { return x_.size(); }
    const BitVec &x() const { return x_; }
    const BitVec &z() const { return z_; }
    BitVec &x() { return x_; }
    BitVec &z() { return z_; }

    bool is_identity() const { return !x_.any() && !z_.any(); }
    size_t weight() const;
    /// Qubits acted on non-trivially, ascending.
    std::vector<size_t> support() const;

    PauliOp &operator*=(const PauliOp &other);
    bool operator==(const PauliOp &other) const = default;
    auto operator<=>(const PauliOp &other) const = default;

    /// The 2n-bit row [x | z] used for GF(2) elimination.
    BitVec symplectic_row() const;
    static PauliOp from_symplectic_row(const BitVec &row, size_t num_qubits);

    /// Dense form, e.g. "XIZY".
    std::string str() const;

   private:
    BitVec x_;
    BitVec z_;
};

/// True iff the symplectic inner product a.x.b.z + a.z.b.x vanishes mod 2.
bool commutes(const PauliOp &a, const PauliOp &b);
/// Phase-free product: component-wise XOR of both masks.
PauliOp multiply(const PauliOp &a, const PauliOp &b);

/// A subgroup of the phase-free Pauli group given by a GF(2)-independent basis.
///
/// The basis is kept in reduced row echelon form over the [x | z] layout, with
/// pivots chosen as the first nonzero column of each incoming generator, so the
/// basis of a span is reproducible for a fixed generator order.
class GroupSpan {
   public:
    explicit GroupSpan(size_t num_qubits = 0) : num_qubits_(num_qubits) {}

    static GroupSpan from_generators(size_t num_qubits, std::span<const PauliOp> generators);

    size_t num_qubits() const { return num_qubits_; }
    size_t rank() const { return rows_.size(); }
    const std::vector<PauliOp> &basis() const { return basis_; }

    /// Adds a generator; returns false when it was already in the span.
    bool add(const PauliOp &op);
    bool contains(const PauliOp &op) const;
    /// Reduces `op` by the basis; the result is zero iff op is in the span.
    PauliOp reduce(const PauliOp &op) const;

   private:
    size_t num_qubits_;
    std::vector<BitVec> rows_;
    std::vector<PauliOp> basis_;
    std::vector<size_t> pivots_;
};

bool in_span(const PauliOp &op, const GroupSpan &span);
/// Basis of the intersection of two spans (Zassenhaus elimination).
GroupSpan span_intersection(const GroupSpan &a, const GroupSpan &b);
/// The elements of `span` commuting with every generator.
GroupSpan centralizer_restricted(const GroupSpan &span, std::span<const PauliOp> generators);

enum class LogicalClass { kStabilizer, kLogicalX, kLogicalZ, kLogicalY };
std::string_view to_string(LogicalClass c);

struct LogicalPair {
    PauliOp x;
    PauliOp z;
};

/// Classifies a zero-syndrome residual by its commutation with the logical pair.
/// Throws ContractViolation naming the first stabilizer basis element the residual anticommutes with.
LogicalClass logical_class(const GroupSpan &stabilizers, const LogicalPair &logicals, const PauliOp &residual);
/// Same classification without the syndrome check, for callers that already know it is zero.
LogicalClass logical_class_unchecked(const LogicalPair &logicals, const PauliOp &residual);

}  // namespace surfcorr

#endif
