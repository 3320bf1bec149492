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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "surfcorr/errors.h"
#include "test_util.h"

namespace surfcorr {
namespace {

using testing::z_at;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(PlanarCodeTest, Counts) {
    for (int d = 2; d <= 21; ++d) {
        PlanarCode code = PlanarCode::build(d);
        EXPECT_EQ(code.num_qubits(), static_cast<size_t>(d * d + (d - 1) * (d - 1)));
        EXPECT_EQ(code.num_x_checks(), static_cast<size_t>(d * (d - 1)));
        EXPECT_EQ(code.num_checks(), static_cast<size_t>(2 * d * (d - 1)));
    }
    EXPECT_EQ(PlanarCode::build(21).num_qubits(), 841u);
    EXPECT_THROW(PlanarCode::build(1), ContractViolation);
}

TEST(PlanarCodeTest, CornerCheckSupport) {
    PlanarCode code = PlanarCode::build(3);
    const Check &c = code.check(code.check_at(0, 1));
    EXPECT_EQ(c.type, CheckType::kX);
    std::vector<size_t> expected{code.qubit_at(0, 0), code.qubit_at(0, 2), code.qubit_at(1, 1)};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(c.support, expected);
}

TEST(PlanarCodeTest, CoordinateParity) {
    PlanarCode code = PlanarCode::build(5);
    for (const auto &c : code.data_coords()) EXPECT_EQ((c.row - c.col) % 2, 0);
    for (size_t i = 0; i < code.num_checks(); ++i) {
        const Check &c = code.check(i);
        EXPECT_NE((c.coord.row - c.coord.col) % 2, 0);
        EXPECT_EQ(c.type == CheckType::kX, c.coord.row % 2 == 0);
        EXPECT_EQ(c.type == CheckType::kX, i < code.num_x_checks());
    }
}

// Exhaustive commutation and rank over small distances.
TEST(PlanarCodeTest, StabilizerInvariants) {
    for (int d = 2; d <= 7; ++d) {
        PlanarCode code = PlanarCode::build(d);
        auto gens = code.stabilizer_generators();
        for (size_t i = 0; i < gens.size(); ++i) {
            for (size_t j = i + 1; j < gens.size(); ++j) EXPECT_TRUE(commutes(gens[i], gens[j]));
            EXPECT_TRUE(commutes(gens[i], code.logical_x()));
            EXPECT_TRUE(commutes(gens[i], code.logical_z()));
        }
        EXPECT_FALSE(commutes(code.logical_x(), code.logical_z()));
        EXPECT_EQ(code.stabilizer_span().rank(), code.num_qubits() - 1);
        EXPECT_FALSE(code.stabilizer_span().contains(code.logical_x()));
        EXPECT_FALSE(code.stabilizer_span().contains(code.logical_z()));
        EXPECT_EQ(code.logical_z().weight(), static_cast<size_t>(d));
        EXPECT_FALSE(code.syndrome(code.logical_x()).any());
        EXPECT_FALSE(code.syndrome(code.logical_z()).any());
    }
}

TEST(PlanarCodeTest, SyndromeExamples) {
    PlanarCode d3 = PlanarCode::build(3);
    EXPECT_FALSE(d3.syndrome(PauliOp(d3.num_qubits())).any());
    EXPECT_EQ(d3.syndrome(z_at(d3, {{0, 0}})).ones(), (std::vector<size_t>{d3.check_at(0, 1)}));

    PlanarCode d5 = PlanarCode::build(5);
    std::vector<size_t> expected{d5.check_at(2, 1), d5.check_at(2, 3)};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(d5.syndrome(z_at(d5, {{2, 2}})).ones(), expected);
}

TEST(PlanarCodeTest, SyndromeIsHomomorphism) {
    PlanarCode code = PlanarCode::build(5);
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        PauliOp a = testing::random_pauli(code.num_qubits(), rng);
        PauliOp b = testing::random_pauli(code.num_qubits(), rng);
        EXPECT_EQ(code.syndrome(multiply(a, b)), code.syndrome(a) ^ code.syndrome(b));
    }
    // Random stabilizer products have zero syndrome.
    auto gens = code.stabilizer_generators();
    for (int i = 0; i < 100; ++i) {
        PauliOp s(code.num_qubits());
        for (const auto &g : gens) {
            if (rng() & 1) s *= g;
        }
        EXPECT_FALSE(code.syndrome(s).any());
    }
}

TEST(PlanarCodeTest, ResidualClassExamples) {
    PlanarCode code = PlanarCode::build(3);
    PauliOp e = z_at(code, {{0, 0}});
    EXPECT_EQ(code.residual_class(e, e), LogicalClass::kStabilizer);
    EXPECT_EQ(code.residual_class(code.logical_z(), PauliOp(code.num_qubits())), LogicalClass::kLogicalZ);
    EXPECT_EQ(code.residual_class(e, z_at(code, {{0, 2}, {0, 4}})), LogicalClass::kLogicalZ);
    EXPECT_THROW(code.residual_class(e, PauliOp(code.num_qubits())), ContractViolation);
}

// No Z-type representative of the logical-Z coset is lighter than d.
TEST(PlanarCodeTest, LogicalZHasMinimumWeight) {
    for (int d = 2; d <= 4; ++d) {
        PlanarCode code = PlanarCode::build(d);
        size_t n = code.num_qubits();
        size_t best = n;
        for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
            PauliOp op(n);
            op.z().words()[0] = mask;
            if (code.syndrome(op).any()) continue;
            if (commutes(op, code.logical_x())) continue;
            best = std::min<size_t>(best, std::popcount(mask));
        }
        EXPECT_EQ(best, static_cast<size_t>(d));
    }
}

TEST(PlanarCodeTest, DescribeMatchesGolden) {
    PlanarCode code = PlanarCode::build(3);
    std::string golden = read_file(std::string(SURFCORR_GOLDEN_DIR) + "/planar_code_d3.txt");
    ASSERT_FALSE(golden.empty());
    EXPECT_EQ(code.describe(), golden);
}

}  // namespace
}  // namespace surfcorr
