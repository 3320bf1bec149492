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

#include <algorithm>
#include <charconv>
#include <sstream>

#include "surfcorr/errors.h"
#include "surfcorr/noise_model.h"

namespace surfcorr {

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view name;
};

constexpr GateInfo kGates[] = {
    {GateKind::kResetX, "RX"},         {GateKind::kResetZ, "RZ"},       {GateKind::kH, "H"},
    {GateKind::kCx, "CX"},             {GateKind::kMeasureX, "MX"},     {GateKind::kMeasureZ, "MZ"},
    {GateKind::kTick, "TICK"},         {GateKind::kDepolarize2, "DEPOLARIZE2"},
    {GateKind::kZError, "Z_ERROR"},    {GateKind::kCorrelatedZ, "CORRELATED_Z"},
};

bool is_pair_gate(GateKind kind) {
    return kind == GateKind::kCx || kind == GateKind::kDepolarize2;
}

bool is_measurement(GateKind kind) {
    return kind == GateKind::kMeasureX || kind == GateKind::kMeasureZ;
}

std::string format_probability(double p) {
    std::ostringstream out;
    out.precision(17);
    out << p;
    return out.str();
}

uint32_t parse_u32(std::string_view token, size_t line) {
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ConfigError("circuit line " + std::to_string(line) + ": bad integer '" + std::string(token) + "'");
    }
    return value;
}

// Neighbor offsets in CX order.
constexpr int kXOrder[4][2] = {{-1, 0}, {0, 1}, {0, -1}, {1, 0}};
constexpr int kZOrder[4][2] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};

}  // namespace

std::string_view gate_name(GateKind kind) {
    for (const auto &g : kGates) {
        if (g.kind == kind) {
            return g.name;
        }
    }
    return "?";
}

bool is_noise(GateKind kind) {
    return kind == GateKind::kDepolarize2 || kind == GateKind::kZError || kind == GateKind::kCorrelatedZ;
}

std::string_view to_string(CorrelatedFamily family) {
    switch (family) {
        case CorrelatedFamily::kNone:
            return "none";
        case CorrelatedFamily::kType1K2:
            return "type1";
        case CorrelatedFamily::kType2:
            return "type2";
    }
    return "?";
}

void CliffordCircuit::append(GateKind kind, std::vector<uint32_t> targets, double probability) {
    if (is_pair_gate(kind) && targets.size() % 2 != 0) {
        throw ContractViolation(std::string(gate_name(kind)) + " needs an even number of targets");
    }
    for (uint32_t q : targets) {
        if (q >= num_qubits) {
            throw ContractViolation("qubit " + std::to_string(q) + " outside circuit of " +
                                    std::to_string(num_qubits) + " qubits");
        }
    }
    if (is_measurement(kind)) {
        num_measurements += targets.size();
    }
    instructions.push_back({kind, probability, std::move(targets)});
}

size_t CliffordCircuit::count(GateKind kind) const {
    size_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.kind == kind) {
            n += kind == GateKind::kCorrelatedZ ? 1
                 : is_pair_gate(kind) ? inst.targets.size() / 2 : std::max<size_t>(inst.targets.size(), 1);
        }
    }
    return n;
}

std::string CliffordCircuit::str() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits << "\n";
    for (const auto &inst : instructions) {
        out << gate_name(inst.kind);
        if (is_noise(inst.kind) || (is_measurement(inst.kind) && inst.probability > 0)) {
            out << "(" << format_probability(inst.probability) << ")";
        }
        for (uint32_t q : inst.targets) {
            out << " " << q;
        }
        out << "\n";
    }
    for (const auto &det : detectors) {
        out << "DETECTOR " << (det.type == CheckType::kX ? "X " : "Z ") << det.check << " " << det.round << " :";
        for (uint32_t m : det.measurements) {
            out << " " << m;
        }
        out << "\n";
    }
    out << "OBSERVABLE :";
    for (uint32_t m : observable) {
        out << " " << m;
    }
    out << "\n";
    return out.str();
}

CliffordCircuit CliffordCircuit::parse(std::string_view text) {
    CliffordCircuit c;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') {
            continue;
        }
        std::vector<std::string> rest;
        for (std::string tok; ls >> tok;) {
            rest.push_back(tok);
        }
        if (head == "QUBITS") {
            if (rest.size() != 1) {
                throw ConfigError("circuit line " + std::to_string(line_no) + ": QUBITS takes one count");
            }
            c.num_qubits = parse_u32(rest[0], line_no);
            continue;
        }
        if (head == "DETECTOR" || head == "OBSERVABLE") {
            auto colon = std::find(rest.begin(), rest.end(), ":");
            if (colon == rest.end()) {
                throw ConfigError("circuit line " + std::to_string(line_no) + ": missing ':'");
            }
            std::vector<uint32_t> recs;
            for (auto it = colon + 1; it != rest.end(); ++it) {
                recs.push_back(parse_u32(*it, line_no));
            }
            if (head == "OBSERVABLE") {
                c.observable = std::move(recs);
                continue;
            }
            if (colon - rest.begin() != 3 || (rest[0] != "X" && rest[0] != "Z")) {
                throw ConfigError("circuit line " + std::to_string(line_no) + ": expected DETECTOR <X|Z> <check> <round> :");
            }
            DetectorSpec det;
            det.type = rest[0] == "X" ? CheckType::kX : CheckType::kZ;
            det.check = parse_u32(rest[1], line_no);
            det.round = parse_u32(rest[2], line_no);
            det.measurements = std::move(recs);
            c.detectors.push_back(std::move(det));
            continue;
        }
        double p = 0;
        std::string name = head;
        auto open = head.find('(');
        if (open != std::string::npos) {
            if (head.back() != ')') {
                throw ConfigError("circuit line " + std::to_string(line_no) + ": unbalanced parenthesis");
            }
            name = head.substr(0, open);
            try {
                p = std::stod(head.substr(open + 1, head.size() - open - 2));
            } catch (const std::exception &) {
                throw ConfigError("circuit line " + std::to_string(line_no) + ": bad probability");
            }
        }
        const GateInfo *info = nullptr;
        for (const auto &g : kGates) {
            if (g.name == name) {
                info = &g;
            }
        }
        if (!info) {
            throw ConfigError("circuit line " + std::to_string(line_no) + ": unknown instruction '" + name + "'");
        }
        std::vector<uint32_t> targets;
        for (const auto &tok : rest) {
            targets.push_back(parse_u32(tok, line_no));
        }
        try {
            c.append(info->kind, std::move(targets), p);
        } catch (const ContractViolation &e) {
            throw ConfigError("circuit line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    for (const auto &det : c.detectors) {
        for (uint32_t m : det.measurements) {
            if (m >= c.num_measurements) {
                throw ConfigError("detector references measurement " + std::to_string(m) + " beyond the record");
            }
        }
    }
    return c;
}

CliffordCircuit build_memory_circuit(const PlanarCode &code, int rounds) {
    if (rounds < 1) {
        throw ContractViolation("memory circuit needs rounds >= 1, got " + std::to_string(rounds));
    }
    const auto n = static_cast<uint32_t>(code.num_qubits());
    const auto nx = static_cast<uint32_t>(code.num_x_checks());
    const auto nc = static_cast<uint32_t>(code.num_checks());
    CliffordCircuit c;
    c.num_qubits = n + nc;

    std::vector<uint32_t> data(n);
    for (uint32_t q = 0; q < n; ++q) {
        data[q] = q;
    }
    std::vector<uint32_t> x_anc;
    std::vector<uint32_t> z_anc;
    for (uint32_t i = 0; i < nc; ++i) {
        (i < nx ? x_anc : z_anc).push_back(n + i);
    }

    std::vector<std::vector<uint32_t>> layers(4);
    for (uint32_t i = 0; i < nc; ++i) {
        const Check &chk = code.check(i);
        const auto &order = chk.type == CheckType::kX ? kXOrder : kZOrder;
        for (int step = 0; step < 4; ++step) {
            auto q = code.qubit_index({chk.coord.row + order[step][0], chk.coord.col + order[step][1]});
            if (!q) {
                continue;
            }
            auto dq = static_cast<uint32_t>(*q);
            if (chk.type == CheckType::kX) {
                layers[step].insert(layers[step].end(), {n + i, dq});
            } else {
                layers[step].insert(layers[step].end(), {dq, n + i});
            }
        }
    }

    c.append(GateKind::kResetX, data);
    c.append(GateKind::kTick, {});
    // measurement record index of check i in round r
    std::vector<std::vector<uint32_t>> record(rounds, std::vector<uint32_t>(nc));
    for (int r = 0; r < rounds; ++r) {
        c.append(GateKind::kResetX, x_anc);
        c.append(GateKind::kResetZ, z_anc);
        c.append(GateKind::kTick, {});
        for (const auto &layer : layers) {
            c.append(GateKind::kCx, layer);
            c.append(GateKind::kTick, {});
        }
        auto base = static_cast<uint32_t>(c.num_measurements);
        for (uint32_t i = 0; i < nc; ++i) {
            record[r][i] = base + i;
        }
        c.append(GateKind::kMeasureX, x_anc);
        c.append(GateKind::kMeasureZ, z_anc);
        c.append(GateKind::kTick, {});
    }
    auto data_base = static_cast<uint32_t>(c.num_measurements);
    c.append(GateKind::kMeasureX, data);

    auto R = static_cast<uint32_t>(rounds);
    for (uint32_t r = 0; r < R; ++r) {
        for (uint32_t i = 0; i < nc; ++i) {
            bool is_x = i < nx;
            if (r == 0) {
                if (is_x) {
                    c.detectors.push_back({CheckType::kX, i, 0, {record[0][i]}});
                }
                continue;
            }
            c.detectors.push_back({is_x ? CheckType::kX : CheckType::kZ, i, r, {record[r - 1][i], record[r][i]}});
        }
    }
    for (uint32_t i = 0; i < nx; ++i) {
        DetectorSpec det{CheckType::kX, i, R, {record[R - 1][i]}};
        for (size_t q : code.check(i).support) {
            det.measurements.push_back(data_base + static_cast<uint32_t>(q));
        }
        c.detectors.push_back(std::move(det));
    }
    for (size_t q : code.logical_x().support()) {
        c.observable.push_back(data_base + static_cast<uint32_t>(q));
    }
    return c;
}

CliffordCircuit attach_noise(const CliffordCircuit &circuit, const PlanarCode &code, double p, double p_cor,
                             CorrelatedFamily family) {
    if (!(p >= 0 && p < 0.5)) {
        throw ConfigError("circuit noise p must lie in [0, 0.5), got " + std::to_string(p));
    }
    if (!(p_cor >= 0 && p_cor < 0.5)) {
        throw ConfigError("correlated probability p_cor must lie in [0, 0.5), got " + std::to_string(p_cor));
    }
    std::vector<std::vector<uint32_t>> correlated;
    if (p_cor > 0 && family != CorrelatedFamily::kNone) {
        auto shared = std::make_shared<const PlanarCode>(code);
        NoiseModel model = family == CorrelatedFamily::kType1K2 ? build_type1(shared, 2, p_cor) : build_type2(shared, p_cor);
        for (const auto &m : model.mechanisms()) {
            std::vector<uint32_t> qs;
            for (size_t q : m.pauli.support()) {
                qs.push_back(static_cast<uint32_t>(q));
            }
            correlated.push_back(std::move(qs));
        }
    }

    CliffordCircuit out;
    out.num_qubits = circuit.num_qubits;
    out.detectors = circuit.detectors;
    out.observable = circuit.observable;
    const uint32_t n = static_cast<uint32_t>(code.num_qubits());
    std::vector<char> live(circuit.num_qubits, 0);
    std::vector<char> touched(circuit.num_qubits, 0);
    bool layer_measures_ancilla = false;

    for (const auto &inst : circuit.instructions) {
        if (inst.kind == GateKind::kTick) {
            if (p > 0) {
                std::vector<uint32_t> idle;
                for (uint32_t q = 0; q < circuit.num_qubits; ++q) {
                    if (live[q] && !touched[q]) {
                        idle.push_back(q);
                    }
                }
                if (!idle.empty()) {
                    out.append(GateKind::kZError, std::move(idle), p);
                }
            }
            out.append(GateKind::kTick, {});
            if (layer_measures_ancilla) {
                for (const auto &qs : correlated) {
                    out.append(GateKind::kCorrelatedZ, qs, p_cor);
                }
            }
            std::fill(touched.begin(), touched.end(), 0);
            layer_measures_ancilla = false;
            continue;
        }
        if (is_noise(inst.kind)) {
            out.instructions.push_back(inst);
            continue;
        }
        for (uint32_t q : inst.targets) {
            touched[q] = 1;
        }
        switch (inst.kind) {
            case GateKind::kResetX:
            case GateKind::kResetZ:
            case GateKind::kH:
                out.append(inst.kind, inst.targets, inst.probability);
                for (uint32_t q : inst.targets) {
                    live[q] = 1;
                }
                if (p > 0) {
                    out.append(GateKind::kZError, inst.targets, p);
                }
                break;
            case GateKind::kCx:
                out.append(inst.kind, inst.targets);
                if (p > 0) {
                    out.append(GateKind::kDepolarize2, inst.targets, p);
                }
                break;
            case GateKind::kMeasureX:
            case GateKind::kMeasureZ:
                out.append(inst.kind, inst.targets, p > 0 ? p : inst.probability);
                for (uint32_t q : inst.targets) {
                    live[q] = 0;
                    if (q >= n) {
                        layer_measures_ancilla = true;
                    }
                }
                break;
            default:
                break;
        }
    }
    return out;
}

}  // namespace surfcorr
