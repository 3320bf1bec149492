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

#include "surfcorr/planar_code.h"

#include <sstream>

#include "surfcorr/errors.h"

namespace surfcorr {

std::string Coord::str() const {
    return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

PlanarCode PlanarCode::build(int d) {
    if (d < 2) {
        throw ContractViolation("planar code distance must be >= 2, got " + std::to_string(d));
    }
    PlanarCode code;
    code.d_ = d;
    int side = 2 * d - 1;
    code.coord_to_qubit_.assign(static_cast<size_t>(side) * side, -1);
    code.coord_to_check_.assign(static_cast<size_t>(side) * side, -1);

    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            if ((r - c) % 2 == 0) {
                code.coord_to_qubit_[code.grid_index({r, c})] = static_cast<int>(code.data_coords_.size());
                code.data_coords_.push_back({r, c});
            }
        }
    }
    size_t n = code.data_coords_.size();

    auto add_checks = [&](CheckType type, int row_parity) {
        for (int r = 0; r < side; ++r) {
            if (r % 2 != row_parity) {
                continue;
            }
            for (int c = 0; c < side; ++c) {
                if ((r - c) % 2 == 0) {
                    continue;
                }
                Check check{type, {r, c}, {}, PauliOp(n)};
                const Coord offsets[4] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
                for (auto off : offsets) {
                    Coord nb{r + off.row, c + off.col};
                    if (code.in_grid(nb)) {
                        check.support.push_back(code.coord_to_qubit_[code.grid_index(nb)]);
                    }
                }
                std::sort(check.support.begin(), check.support.end());
                check.op = type == CheckType::kX ? PauliOp::x_on(n, check.support) : PauliOp::z_on(n, check.support);
                code.coord_to_check_[code.grid_index({r, c})] = static_cast<int>(code.checks_.size());
                code.checks_.push_back(std::move(check));
            }
        }
    };
    add_checks(CheckType::kX, 0);
    code.num_x_checks_ = code.checks_.size();
    add_checks(CheckType::kZ, 1);

    code.x_checks_of_qubit_.resize(n);
    code.z_checks_of_qubit_.resize(n);
    for (size_t i = 0; i < code.checks_.size(); ++i) {
        for (size_t q : code.checks_[i].support) {
            (code.checks_[i].type == CheckType::kX ? code.x_checks_of_qubit_ : code.z_checks_of_qubit_)[q].push_back(i);
        }
    }

    std::vector<size_t> row0;
    std::vector<size_t> col0;
    for (int k = 0; k < side; k += 2) {
        row0.push_back(code.qubit_at(0, k));
        col0.push_back(code.qubit_at(k, 0));
    }
    code.logicals_.z = PauliOp::z_on(n, row0);
    code.logicals_.x = PauliOp::x_on(n, col0);

    code.stabilizer_span_ = GroupSpan(n);
    for (const auto &check : code.checks_) {
        code.stabilizer_span_.add(check.op);
    }
    return code;
}

std::optional<size_t> PlanarCode::qubit_index(Coord c) const {
    if (!in_grid(c)) {
        return std::nullopt;
    }
    int q = coord_to_qubit_[grid_index(c)];
    if (q < 0) {
        return std::nullopt;
    }
    return static_cast<size_t>(q);
}

size_t PlanarCode::qubit_at(int row, int col) const {
    auto q = qubit_index({row, col});
    if (!q) {
        throw ContractViolation("no data qubit at " + Coord{row, col}.str());
    }
    return *q;
}

std::optional<size_t> PlanarCode::check_index(Coord c) const {
    if (!in_grid(c)) {
        return std::nullopt;
    }
    int i = coord_to_check_[grid_index(c)];
    if (i < 0) {
        return std::nullopt;
    }
    return static_cast<size_t>(i);
}

size_t PlanarCode::check_at(int row, int col) const {
    auto i = check_index({row, col});
    if (!i) {
        throw ContractViolation("no check at " + Coord{row, col}.str());
    }
    return *i;
}

std::vector<PauliOp> PlanarCode::stabilizer_generators() const {
    std::vector<PauliOp> out;
    out.reserve(checks_.size());
    for (const auto &check : checks_) {
        out.push_back(check.op);
    }
    return out;
}

PauliOp PlanarCode::z_on(std::span<const Coord> coords) const {
    PauliOp op(num_qubits());
    for (auto c : coords) {
        op.z().flip(qubit_at(c.row, c.col));
    }
    return op;
}

PauliOp PlanarCode::x_on(std::span<const Coord> coords) const {
    PauliOp op(num_qubits());
    for (auto c : coords) {
        op.x().flip(qubit_at(c.row, c.col));
    }
    return op;
}

BitVec PlanarCode::syndrome(const PauliOp &error) const {
    if (error.num_qubits() != num_qubits()) {
        throw ContractViolation("syndrome: error has " + std::to_string(error.num_qubits()) + " qubits, code has " +
                                std::to_string(num_qubits()));
    }
    BitVec s(checks_.size());
    // Z components are seen by X-checks and X components by Z-checks.
    for (size_t q : error.z().ones()) {
        for (size_t i : x_checks_of_qubit_[q]) {
            s.flip(i);
        }
    }
    for (size_t q : error.x().ones()) {
        for (size_t i : z_checks_of_qubit_[q]) {
            s.flip(i);
        }
    }
    return s;
}

LogicalClass PlanarCode::residual_class(const PauliOp &error, const PauliOp &correction) const {
    PauliOp residual = multiply(error, correction);
    BitVec s = syndrome(residual);
    if (s.any()) {
        throw ContractViolation("correction syndrome differs from error syndrome at check " +
                                std::to_string(s.first_one()));
    }
    return logical_class_unchecked(logicals_, residual);
}

std::string PlanarCode::describe() const {
    std::ostringstream out;
    out << "planar_code d=" << d_ << " n=" << num_qubits() << " x_checks=" << num_x_checks_
        << " z_checks=" << checks_.size() - num_x_checks_ << "\n";
    for (size_t q = 0; q < data_coords_.size(); ++q) {
        out << "data " << q << " " << data_coords_[q].row << " " << data_coords_[q].col << "\n";
    }
    for (size_t i = 0; i < checks_.size(); ++i) {
        const auto &check = checks_[i];
        out << (check.type == CheckType::kX ? "xcheck " : "zcheck ") << i << " " << check.coord.row << " "
            << check.coord.col << " :";
        for (size_t q : check.support) {
            out << " " << q;
        }
        out << "\n";
    }
    auto dump = [&](const char *name, const BitVec &mask) {
        out << name << " :";
        for (size_t q : mask.ones()) {
            out << " " << q;
        }
        out << "\n";
    };
    dump("logical_x", logicals_.x.x());
    dump("logical_z", logicals_.z.z());
    return out.str();
}

}  // namespace surfcorr
