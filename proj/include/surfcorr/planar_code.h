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

#ifndef SURFCORR_PLANAR_CODE_H
#define SURFCORR_PLANAR_CODE_H

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surfcorr/pauli.h"

namespace surfcorr {

/// Position in the checkerboard frame. Data qubits have row == col (mod 2),
/// check sites have row != col (mod 2).
struct Coord {
    int row = 0;
    int col = 0;
    auto operator<=>(const Coord &) const = default;
    std::string str() const;
};

enum class CheckType { kX, kZ };

struct Check {
    CheckType type;
    Coord coord;
    /// Data-qubit indices, ascending.
    std::vector<size_t> support;
    PauliOp op;
};

/// Distance-d planar surface code with open boundaries.
///
/// Data qubits sit at every (r, c) with 0 <= r, c <= 2d-2 and r == c (mod 2). X-checks
/// (vertex operators) sit at even rows / odd columns, Z-checks (plaquettes) at odd rows /
/// even columns, each acting on its lattice neighbours. Qubits and checks are indexed
/// row-major; check index space lists all X-checks first, then all Z-checks.
class PlanarCode {
   public:
    static PlanarCode build(int d);

    int distance() const { return d_; }
    size_t num_qubits() const { return data_coords_.size(); }
    size_t num_x_checks() const { return num_x_checks_; }
    size_t num_checks() const { return checks_.size(); }

    const std::vector<Coord> &data_coords() const { return data_coords_; }
    std::optional<size_t> qubit_index(Coord c) const;
    size_t qubit_at(int row, int col) const;

    const std::vector<Check> &checks() const { return checks_; }
    const Check &check(size_t index) const { return checks_.at(index); }
    std::optional<size_t> check_index(Coord c) const;
    size_t check_at(int row, int col) const;
    /// Check indices of every check acting on the qubit, split by type.
    const std::vector<size_t> &x_checks_of_qubit(size_t q) const { return x_checks_of_qubit_[q]; }
    const std::vector<size_t> &z_checks_of_qubit(size_t q) const { return z_checks_of_qubit_[q]; }
    std::vector<PauliOp> stabilizer_generators() const;

    const PauliOp &logical_x() const { return logicals_.x; }
    const PauliOp &logical_z() const { return logicals_.z; }
    const LogicalPair &logicals() const { return logicals_; }
    const GroupSpan &stabilizer_span() const { return stabilizer_span_; }

    PauliOp z_on(std::span<const Coord> coords) const;
    PauliOp x_on(std::span<const Coord> coords) const;

    /// Bit i is set iff `error` anticommutes with check i.
    BitVec syndrome(const PauliOp &error) const;
    /// Logical class of error * correction; requires matching syndromes.
    LogicalClass residual_class(const PauliOp &error, const PauliOp &correction) const;

    /// Line-oriented text description with stable ordering, one record per line.
    std::string describe() const;

   private:
    int d_ = 0;
    size_t num_x_checks_ = 0;
    std::vector<Coord> data_coords_;
    std::vector<int> coord_to_qubit_;
    std::vector<int> coord_to_check_;
    std::vector<Check> checks_;
    std::vector<std::vector<size_t>> x_checks_of_qubit_;
    std::vector<std::vector<size_t>> z_checks_of_qubit_;
    LogicalPair logicals_;
    GroupSpan stabilizer_span_;

    size_t grid_index(Coord c) const { return static_cast<size_t>(c.row) * (2 * d_ - 1) + c.col; }
    bool in_grid(Coord c) const { return c.row >= 0 && c.col >= 0 && c.row <= 2 * d_ - 2 && c.col <= 2 * d_ - 2; }
};

}  // namespace surfcorr

#endif
