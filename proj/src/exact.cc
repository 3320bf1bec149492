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

#include "surfcorr/exact.h"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>

#include "surfcorr/errors.h"

namespace surfcorr {

namespace {

void check_enumerable(const NoiseModel &model, const PlanarCode &code) {
    if (model.size() > kMaxEnumeratedMechanisms) {
        throw ContractViolation("exact enumeration limited to " + std::to_string(kMaxEnumeratedMechanisms) +
                                " mechanisms, model has " + std::to_string(model.size()));
    }
    for (const auto &m : model.mechanisms()) {
        if (m.pauli.num_qubits() != code.num_qubits()) {
            throw ContractViolation("exact enumeration needs data-qubit mechanisms");
        }
    }
}

/// Visits every firing pattern in Gray-code order with its error and probability.
template <typename Visit>
void for_each_pattern(const NoiseModel &model, const PlanarCode &code, Visit &&visit) {
    const auto &mechs = model.mechanisms();
    size_t m = mechs.size();
    PauliOp error(code.num_qubits());
    std::vector<bool> fired(m, false);
    uint64_t total = uint64_t{1} << m;
    for (uint64_t i = 0; i < total; ++i) {
        if (i > 0) {
            size_t bit = std::countr_zero(i);
            fired[bit] = !fired[bit];
            error *= mechs[bit].pauli;
        }
        double prob = 1;
        for (size_t j = 0; j < m; ++j) {
            prob *= fired[j] ? mechs[j].probability : 1 - mechs[j].probability;
        }
        if (prob > 0) {
            visit(error, prob);
        }
    }
}

}  // namespace

Decoder mwpm_decoder(std::shared_ptr<const DetectorGraph> graph) {
    return [graph](const BitVec &syndrome) { return graph->decode(syndrome).correction; };
}

double success_probability_exact(const NoiseModel &model, const PlanarCode &code, const Decoder &decoder) {
    check_enumerable(model, code);
    std::map<BitVec, PauliOp> cache;
    double success = 0;
    for_each_pattern(model, code, [&](const PauliOp &error, double prob) {
        BitVec s = code.syndrome(error);
        auto it = cache.find(s);
        if (it == cache.end()) {
            it = cache.emplace(s, decoder(s)).first;
        }
        if (code.residual_class(error, it->second) == LogicalClass::kStabilizer) {
            success += prob;
        }
    });
    return success;
}

MlDecision decode_ml_bruteforce(const PlanarCode &code, const NoiseModel &model, const BitVec &syndrome) {
    check_enumerable(model, code);
    MlDecision decision;
    std::optional<PauliOp> canonical;
    const LogicalPair &logicals = code.logicals();
    for_each_pattern(model, code, [&](const PauliOp &error, double prob) {
        if (code.syndrome(error) != syndrome) {
            return;
        }
        if (!canonical) {
            canonical = error;
        }
        auto cls = logical_class_unchecked(logicals, multiply(error, *canonical));
        decision.class_probability[static_cast<size_t>(cls)] += prob;
    });
    if (!canonical) {
        throw InfeasibleError("no firing pattern produces the given syndrome");
    }
    size_t best = 0;
    for (size_t c = 1; c < 4; ++c) {
        if (decision.class_probability[c] > decision.class_probability[best]) {
            best = c;
        }
    }
    decision.best = static_cast<LogicalClass>(best);
    decision.correction = *canonical;
    if (decision.best == LogicalClass::kLogicalX || decision.best == LogicalClass::kLogicalY) {
        decision.correction *= logicals.x;
    }
    if (decision.best == LogicalClass::kLogicalZ || decision.best == LogicalClass::kLogicalY) {
        decision.correction *= logicals.z;
    }
    return decision;
}

double ml_failure_probability_exact(const NoiseModel &model, const PlanarCode &code) {
    check_enumerable(model, code);
    struct Entry {
        PauliOp canonical;
        std::array<double, 4> mass{};
    };
    std::map<BitVec, Entry> by_syndrome;
    double total = 0;
    for_each_pattern(model, code, [&](const PauliOp &error, double prob) {
        BitVec s = code.syndrome(error);
        auto [it, inserted] = by_syndrome.try_emplace(std::move(s));
        if (inserted) {
            it->second.canonical = error;
        }
        auto cls = logical_class_unchecked(code.logicals(), multiply(error, it->second.canonical));
        it->second.mass[static_cast<size_t>(cls)] += prob;
        total += prob;
    });
    double success = 0;
    for (const auto &[s, entry] : by_syndrome) {
        success += *std::max_element(entry.mass.begin(), entry.mass.end());
    }
    return total - success;
}

}  // namespace surfcorr
