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


#include "surfcorr/circuit.h"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "surfcorr/errors.h"
#include "surfcorr/noise_model.h"
#include "tableau.h"
#include "test_util.h"

namespace surfcorr {
namespace {

using testing::make_code;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

size_t count_detectors(const CliffordCircuit &c, CheckType type) {
    size_t n = 0;
    for (const auto &det : c.detectors) n += det.type == type;
    return n;
}

TEST(CircuitTest, DetectorCounts) {
    for (int d : {2, 3, 5}) {
        PlanarCode code = PlanarCode::build(d);
        for (int rounds : {1, 2, 3, 5}) {
            CliffordCircuit c = build_memory_circuit(code, rounds);
            size_t per_type = static_cast<size_t>(d * (d - 1));
            EXPECT_EQ(count_detectors(c, CheckType::kX), per_type * (rounds + 1));
            EXPECT_EQ(count_detectors(c, CheckType::kZ), per_type * (rounds - 1));
            EXPECT_EQ(c.num_measurements, rounds * code.num_checks() + code.num_qubits());
            size_t weight = 0;
            for (size_t i = 0; i < code.num_checks(); ++i) weight += code.check(i).support.size();
            EXPECT_EQ(c.count(GateKind::kCx), weight * rounds);
        }
    }
    EXPECT_THROW(build_memory_circuit(PlanarCode::build(3), 0), ContractViolation);
}

TEST(CircuitTest, CountsMatchGolden) {
    CliffordCircuit c = build_memory_circuit(PlanarCode::build(3), 3);
    std::ostringstream summary;
    summary << "qubits " << c.num_qubits << "\n"
            << "measurements " << c.num_measurements << "\n"
            << "x_detectors " << count_detectors(c, CheckType::kX) << "\n"
            << "z_detectors " << count_detectors(c, CheckType::kZ) << "\n"
            << "observable " << c.observable.size() << "\n";
    EXPECT_EQ(summary.str(), read_file(std::string(SURFCORR_GOLDEN_DIR) + "/memory_circuit_d3_r3_counts.txt"));
}

TEST(CircuitTest, TextMatchesGolden) {
    CliffordCircuit c = build_memory_circuit(PlanarCode::build(3), 1);
    EXPECT_EQ(c.str(), read_file(std::string(SURFCORR_GOLDEN_DIR) + "/memory_circuit_d3_r1.txt"));
}

// Each round has the same instruction pattern.
TEST(CircuitTest, RoundsArePeriodic) {
    PlanarCode code = PlanarCode::build(3);
    CliffordCircuit c = build_memory_circuit(code, 4);
    // Prefix: RX data, TICK. Each round: 2 resets, TICK, 4 x (CX, TICK), 2 measures, TICK.
    const size_t per_round = 2 + 1 + 8 + 2 + 1;
    ASSERT_EQ(c.instructions.size(), 2 + 4 * per_round + 1);
    for (size_t r = 1; r < 4; ++r) {
        for (size_t i = 0; i < per_round; ++i) {
            const auto &a = c.instructions[2 + i];
            const auto &b = c.instructions[2 + r * per_round + i];
            EXPECT_EQ(a.kind, b.kind);
            EXPECT_EQ(a.targets, b.targets);
        }
    }
}

// Simultaneous CX layers touch each qubit at most once, and every X/Z check pair
// sharing data qubits interleaves in an order that preserves commutation.
TEST(CircuitTest, ScheduleIsConsistent) {
    for (int d : {3, 5}) {
        PlanarCode code = PlanarCode::build(d);
        CliffordCircuit c = build_memory_circuit(code, 1);
        const uint32_t n = static_cast<uint32_t>(code.num_qubits());
        std::map<std::pair<uint32_t, uint32_t>, int> step;  // (check, data) -> layer
        int layer = 0;
        for (const auto &inst : c.instructions) {
            if (inst.kind != GateKind::kCx) continue;
            std::set<uint32_t> used;
            for (uint32_t q : inst.targets) EXPECT_TRUE(used.insert(q).second);
            for (size_t k = 0; k < inst.targets.size(); k += 2) {
                uint32_t a = inst.targets[k], b = inst.targets[k + 1];
                bool x_check = a >= n;
                uint32_t check = (x_check ? a : b) - n;
                uint32_t data = x_check ? b : a;
                EXPECT_EQ(code.check(check).type == CheckType::kX, x_check);
                step[{check, data}] = layer;
            }
            ++layer;
        }
        for (size_t i = 0; i < code.num_checks(); ++i) {
            for (size_t q : code.check(i).support) EXPECT_TRUE(step.count({static_cast<uint32_t>(i), q}));
        }
        for (size_t xi = 0; xi < code.num_x_checks(); ++xi) {
            for (size_t zi = code.num_x_checks(); zi < code.num_checks(); ++zi) {
                int x_first = 0;
                for (size_t q : code.check(xi).support) {
                    auto it = step.find({static_cast<uint32_t>(zi), static_cast<uint32_t>(q)});
                    if (it == step.end()) continue;
                    x_first += step[{static_cast<uint32_t>(xi), static_cast<uint32_t>(q)}] < it->second;
                }
                EXPECT_EQ(x_first % 2, 0) << "checks " << xi << " and " << zi;
            }
        }
    }
}

// Full stabilizer simulation with random measurement outcomes: every detector and the
// observable are deterministic and zero.
TEST(CircuitTest, NoiselessDetectorsAreDeterministic) {
    for (int d : {2, 3}) {
        PlanarCode code = PlanarCode::build(d);
        for (int rounds : {1, 3}) {
            CliffordCircuit c = build_memory_circuit(code, rounds);
            for (uint64_t seed = 0; seed < 8; ++seed) {
                Rng rng(seed);
                auto run = testing::run_tableau(c, {}, rng);
                for (size_t k = 0; k < run.detectors.size(); ++k) EXPECT_EQ(run.detectors[k], 0) << k;
                EXPECT_FALSE(run.observable);
            }
        }
    }
}

TEST(CircuitTest, TextRoundTrip) {
    PlanarCode code = PlanarCode::build(3);
    CliffordCircuit c = attach_noise(build_memory_circuit(code, 2), code, 0.003, 0.0015, CorrelatedFamily::kType2);
    std::string text = c.str();
    CliffordCircuit parsed = CliffordCircuit::parse(text);
    EXPECT_EQ(parsed.str(), text);
    ASSERT_EQ(parsed.instructions.size(), c.instructions.size());
    for (size_t i = 0; i < c.instructions.size(); ++i) {
        EXPECT_EQ(parsed.instructions[i].probability, c.instructions[i].probability);
    }
    EXPECT_THROW(CliffordCircuit::parse("QUBITS 2\nFOO 1\n"), ConfigError);
    EXPECT_THROW(CliffordCircuit::parse("QUBITS 2\nCX 0\n"), ConfigError);
    EXPECT_THROW(CliffordCircuit::parse("QUBITS 2\nMX 0\nDETECTOR X 0 0 : 4\n"), ConfigError);
}

TEST(CircuitTest, NoiseAnnotations) {
    PlanarCode code = PlanarCode::build(3);
    CliffordCircuit bare = build_memory_circuit(code, 3);
    EXPECT_EQ(attach_noise(bare, code, 0, 0, CorrelatedFamily::kType2).str(), bare.str());

    CliffordCircuit noisy = attach_noise(bare, code, 0.001, 0, CorrelatedFamily::kNone);
    EXPECT_EQ(noisy.count(GateKind::kDepolarize2), noisy.count(GateKind::kCx));
    for (const auto &inst : noisy.instructions) {
        if (inst.kind == GateKind::kDepolarize2 || inst.kind == GateKind::kMeasureX ||
            inst.kind == GateKind::kMeasureZ) {
            EXPECT_EQ(inst.probability, 0.001);
        }
    }
    EXPECT_EQ(noisy.count(GateKind::kCorrelatedZ), 0u);
    EXPECT_NE(noisy.str().find("DEPOLARIZE2(0.001)"), std::string::npos);

    CliffordCircuit cor = attach_noise(bare, code, 0.004, 0.5 * 0.004, CorrelatedFamily::kType1K2);
    size_t per_round = build_type1(make_code(3), 2, 0.1).size();
    EXPECT_EQ(cor.count(GateKind::kCorrelatedZ), 3 * per_round);
    for (const auto &inst : cor.instructions) {
        if (inst.kind == GateKind::kCorrelatedZ) {
            EXPECT_EQ(inst.probability, 0.002);
            EXPECT_EQ(inst.targets.size(), 2u);
        }
    }
    EXPECT_THROW(attach_noise(bare, code, 0.5, 0, CorrelatedFamily::kNone), ConfigError);
    EXPECT_THROW(attach_noise(bare, code, 0.1, -0.1, CorrelatedFamily::kType2), ConfigError);
}

// Idle noise lands only on qubits that are initialized, unmeasured and not acted on.
TEST(CircuitTest, IdleNoiseTargetsLiveIdleQubits) {
    PlanarCode code = PlanarCode::build(3);
    CliffordCircuit noisy = attach_noise(build_memory_circuit(code, 2), code, 0.01, 0, CorrelatedFamily::kNone);
    std::vector<char> live(noisy.num_qubits, 0), touched(noisy.num_qubits, 0);
    for (const auto &inst : noisy.instructions) {
        switch (inst.kind) {
            case GateKind::kTick:
                std::fill(touched.begin(), touched.end(), 0);
                break;
            case GateKind::kZError:
                for (uint32_t q : inst.targets) EXPECT_TRUE(live[q]);
                break;
            case GateKind::kResetX:
            case GateKind::kResetZ:
                for (uint32_t q : inst.targets) live[q] = touched[q] = 1;
                break;
            case GateKind::kMeasureX:
            case GateKind::kMeasureZ:
                for (uint32_t q : inst.targets) {
                    live[q] = 0;
                    touched[q] = 1;
                }
                break;
            case GateKind::kCx:
                for (uint32_t q : inst.targets) touched[q] = 1;
                break;
            default:
                break;
        }
    }
}

}  // namespace
}  // namespace surfcorr
