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

#include "surfcorr/noise_model.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "surfcorr/errors.h"

namespace surfcorr {

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        throw ContractViolation(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

class UnionFind {
   public:
    explicit UnionFind(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    size_t find(size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
        }
    }

   private:
    std::vector<size_t> parent_;
};

}  // namespace

std::string_view to_string(NoiseFamily family) {
    switch (family) {
        case NoiseFamily::kIid:
            return "iid";
        case NoiseFamily::kType1:
            return "type1";
        case NoiseFamily::kType2:
            return "type2";
        case NoiseFamily::kMixed:
            return "mixed";
        case NoiseFamily::kCircuit:
            return "circuit";
    }
    return "?";
}

NoiseFamily parse_family(std::string_view text) {
    for (auto f : {NoiseFamily::kIid, NoiseFamily::kType1, NoiseFamily::kType2, NoiseFamily::kMixed,
                   NoiseFamily::kCircuit}) {
        if (text == to_string(f)) {
            return f;
        }
    }
    throw ConfigError("family: unknown noise family '" + std::string(text) + "'");
}

std::string ModelDescriptor::to_record() const {
    nlohmann::json j;
    j["family"] = std::string(to_string(family));
    j["d"] = d;
    if (k > 0) {
        j["k"] = k;
    }
    j["p"] = p;
    return j.dump();
}

ModelDescriptor ModelDescriptor::from_record(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("descriptor: ") + e.what());
    }
    ModelDescriptor out;
    try {
        out.family = parse_family(j.at("family").get<std::string>());
        out.d = j.at("d").get<int>();
        out.k = j.value("k", 0);
        out.p = j.at("p").get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("descriptor: ") + e.what());
    }
    return out;
}

double odd_parity_probability(std::span<const double> probabilities) {
    double odd = 0;
    for (double p : probabilities) {
        odd = odd * (1 - p) + p * (1 - odd);
    }
    return odd;
}

NoiseModel::NoiseModel(ModelDescriptor descriptor, std::shared_ptr<const PlanarCode> code, size_t num_detectors,
                       std::vector<ErrorMechanism> mechanisms, bool merge_duplicates)
    : descriptor_(descriptor), code_(std::move(code)), num_detectors_(num_detectors) {
    std::map<std::tuple<PauliOp, std::vector<uint32_t>, uint64_t>, size_t> seen;
    for (auto &m : mechanisms) {
        check_probability(m.probability, "mechanism probability");
        std::sort(m.detectors.begin(), m.detectors.end());
        for (uint32_t det : m.detectors) {
            if (det >= num_detectors_) {
                throw ContractViolation("mechanism detector D" + std::to_string(det) + " outside detector space of size " +
                                        std::to_string(num_detectors_));
            }
        }
        if (std::adjacent_find(m.detectors.begin(), m.detectors.end()) != m.detectors.end()) {
            throw ContractViolation("mechanism lists a detector twice");
        }
        if (!merge_duplicates) {
            mechanisms_.push_back(std::move(m));
            continue;
        }
        auto key = std::make_tuple(m.pauli, m.detectors, m.logical_mask);
        auto it = seen.find(key);
        if (it != seen.end()) {
            double &q = mechanisms_[it->second].probability;
            q = q * (1 - m.probability) + m.probability * (1 - q);
            continue;
        }
        seen.emplace(std::move(key), mechanisms_.size());
        mechanisms_.push_back(std::move(m));
    }
}

NoiseModel NoiseModel::from_paulis(ModelDescriptor descriptor, std::shared_ptr<const PlanarCode> code,
                                   const std::vector<std::pair<PauliOp, double>> &paulis) {
    if (!code) {
        throw ContractViolation("from_paulis requires a code");
    }
    std::vector<ErrorMechanism> mechanisms;
    mechanisms.reserve(paulis.size());
    for (const auto &[pauli, p] : paulis) {
        ErrorMechanism m;
        m.probability = p;
        m.pauli = pauli;
        for (size_t i : code->syndrome(pauli).ones()) {
            m.detectors.push_back(static_cast<uint32_t>(i));
        }
        if (!commutes(pauli, code->logical_x())) {
            m.logical_mask |= kFlipsLogicalXReadout;
        }
        if (!commutes(pauli, code->logical_z())) {
            m.logical_mask |= kFlipsLogicalZReadout;
        }
        mechanisms.push_back(std::move(m));
    }
    size_t num_detectors = code->num_checks();
    return NoiseModel(descriptor, std::move(code), num_detectors, std::move(mechanisms));
}

void NoiseModel::sample_fired(Rng &rng, std::vector<size_t> &fired) const {
    fired.clear();
    for (size_t i = 0; i < mechanisms_.size(); ++i) {
        if (bernoulli(rng, mechanisms_[i].probability)) {
            fired.push_back(i);
        }
    }
}

PauliOp NoiseModel::sample(Rng &rng) const {
    std::vector<size_t> fired;
    sample_fired(rng, fired);
    return pauli_of(fired);
}

PauliOp NoiseModel::pauli_of(std::span<const size_t> fired) const {
    PauliOp out(code_ ? code_->num_qubits() : 0);
    for (size_t i : fired) {
        out *= mechanisms_[i].pauli;
    }
    return out;
}

BitVec NoiseModel::syndrome_of(std::span<const size_t> fired) const {
    BitVec s(num_detectors_);
    for (size_t i : fired) {
        for (uint32_t det : mechanisms_[i].detectors) {
            s.flip(det);
        }
    }
    return s;
}

uint64_t NoiseModel::logical_mask_of(std::span<const size_t> fired) const {
    uint64_t mask = 0;
    for (size_t i : fired) {
        mask ^= mechanisms_[i].logical_mask;
    }
    return mask;
}

std::vector<uint32_t> NoiseModel::detector_support() const {
    std::vector<uint32_t> out;
    for (const auto &m : mechanisms_) {
        out.insert(out.end(), m.detectors.begin(), m.detectors.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

NoiseModel NoiseModel::with_mechanisms(std::vector<ErrorMechanism> mechanisms) const {
    return NoiseModel(descriptor_, code_, num_detectors_, std::move(mechanisms));
}

std::string NoiseModel::to_dem() const {
    std::ostringstream out;
    for (const auto &m : mechanisms_) {
        out << "error(" << format_double(m.probability) << ")";
        for (uint32_t det : m.detectors) {
            out << " D" << det;
        }
        for (int obs = 0; obs < 64; ++obs) {
            if ((m.logical_mask >> obs) & 1) {
                out << " L" << obs;
            }
        }
        out << "\n";
    }
    return out.str();
}

NoiseModel NoiseModel::parse_dem(std::string_view text, size_t min_detectors) {
    std::vector<ErrorMechanism> mechanisms;
    size_t num_detectors = min_detectors;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream tokens(line);
        std::string head;
        if (!(tokens >> head)) {
            continue;
        }
        auto fail = [&](const std::string &why) {
            throw ContractViolation("mechanism list line " + std::to_string(line_no) + ": " + why);
        };
        if (head.rfind("error(", 0) != 0 || head.back() != ')') {
            fail("expected error(p), got '" + head + "'");
        }
        ErrorMechanism m;
        std::string arg = head.substr(6, head.size() - 7);
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m.probability);
        if (ec != std::errc() || ptr != arg.data() + arg.size()) {
            fail("bad probability '" + arg + "'");
        }
        std::string tok;
        while (tokens >> tok) {
            if (tok.size() < 2 || (tok[0] != 'D' && tok[0] != 'L')) {
                fail("bad target '" + tok + "'");
            }
            uint64_t value = 0;
            auto [p2, ec2] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), value);
            if (ec2 != std::errc() || p2 != tok.data() + tok.size()) {
                fail("bad target '" + tok + "'");
            }
            if (tok[0] == 'D') {
                m.detectors.push_back(static_cast<uint32_t>(value));
                num_detectors = std::max<size_t>(num_detectors, value + 1);
            } else {
                if (value >= 64) {
                    fail("observable index too large");
                }
                m.logical_mask ^= uint64_t{1} << value;
            }
        }
        mechanisms.push_back(std::move(m));
    }
    ModelDescriptor descriptor;
    descriptor.family = NoiseFamily::kMixed;
    return NoiseModel(descriptor, nullptr, num_detectors, std::move(mechanisms), false);
}

NoiseModel build_iid_z(std::shared_ptr<const PlanarCode> code, double p) {
    check_probability(p, "p");
    std::vector<std::pair<PauliOp, double>> paulis;
    for (size_t q = 0; q < code->num_qubits(); ++q) {
        size_t qs[] = {q};
        paulis.emplace_back(PauliOp::z_on(code->num_qubits(), qs), p);
    }
    ModelDescriptor desc{NoiseFamily::kIid, code->distance(), 0, p};
    return NoiseModel::from_paulis(desc, std::move(code), paulis);
}

NoiseModel build_type1(std::shared_ptr<const PlanarCode> code, int k, double p1) {
    check_probability(p1, "p1");
    int d = code->distance();
    if (k < 2) {
        throw ContractViolation("type-1 correlation length k must be >= 2, got " + std::to_string(k));
    }
    if (k > d) {
        throw ContractViolation("type-1 correlation length k=" + std::to_string(k) + " exceeds distance d=" +
                                std::to_string(d));
    }
    int last = 2 * d - 2;
    std::vector<std::pair<PauliOp, double>> paulis;
    std::vector<Coord> window(k);
    // Horizontal lines of k even-even qubits.
    for (int r = 0; r <= last; r += 2) {
        for (int c0 = 0; c0 + 2 * (k - 1) <= last; c0 += 2) {
            for (int t = 0; t < k; ++t) {
                window[t] = {r, c0 + 2 * t};
            }
            paulis.emplace_back(code->z_on(window), p1);
        }
    }
    // Vertical lines of k odd-odd qubits.
    for (int c = 1; c < last; c += 2) {
        for (int r0 = 1; r0 + 2 * (k - 1) < last; r0 += 2) {
            for (int t = 0; t < k; ++t) {
                window[t] = {r0 + 2 * t, c};
            }
            paulis.emplace_back(code->z_on(window), p1);
        }
    }
    ModelDescriptor desc{NoiseFamily::kType1, d, k, p1};
    return NoiseModel::from_paulis(desc, std::move(code), paulis);
}

NoiseModel build_type2(std::shared_ptr<const PlanarCode> code, double p2) {
    check_probability(p2, "p2");
    std::vector<std::pair<PauliOp, double>> paulis;
    for (const auto &c : code->data_coords()) {
        for (int dc : {-1, 1}) {
            Coord nb{c.row + 1, c.col + dc};
            if (code->qubit_index(nb)) {
                Coord pair[] = {c, nb};
                paulis.emplace_back(code->z_on(pair), p2);
            }
        }
    }
    ModelDescriptor desc{NoiseFamily::kType2, code->distance(), 0, p2};
    return NoiseModel::from_paulis(desc, std::move(code), paulis);
}

NoiseModel combine_models(const NoiseModel &a, const NoiseModel &b) {
    if (a.code() != b.code() || a.num_detectors() != b.num_detectors()) {
        throw ContractViolation("combine_models: models must share a code and detector space");
    }
    std::vector<ErrorMechanism> all = a.mechanisms();
    all.insert(all.end(), b.mechanisms().begin(), b.mechanisms().end());
    ModelDescriptor desc = a.descriptor();
    desc.family = NoiseFamily::kMixed;
    desc.k = 0;
    return NoiseModel(desc, a.code(), a.num_detectors(), std::move(all));
}

std::vector<NoiseModel> decompose_by_components(const NoiseModel &model) {
    auto family = model.descriptor().family;
    if (family != NoiseFamily::kType1 && family != NoiseFamily::kType2) {
        throw StructuralError("decompose_by_components needs a single correlated family (type1 or type2), got " +
                              std::string(to_string(family)));
    }
    UnionFind uf(model.num_detectors());
    for (size_t i = 0; i < model.size(); ++i) {
        const auto &dets = model.mechanism(i).detectors;
        if (dets.empty()) {
            throw StructuralError("mechanism " + std::to_string(i) + " (" + model.mechanism(i).pauli.str() +
                                  ") triggers no detector; an undetectable mechanism cannot be assigned a component");
        }
        for (size_t t = 1; t < dets.size(); ++t) {
            uf.unite(dets[0], dets[t]);
        }
    }
    std::map<size_t, std::vector<ErrorMechanism>> by_root;
    for (const auto &m : model.mechanisms()) {
        by_root[uf.find(m.detectors[0])].push_back(m);
    }
    std::vector<NoiseModel> out;
    for (auto &[root, mechs] : by_root) {
        out.push_back(model.with_mechanisms(std::move(mechs)));
    }
    return out;
}

std::vector<VirtualQubit> virtual_qubit_map(const NoiseModel &model) {
    std::vector<VirtualQubit> groups;
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < model.size(); ++i) {
        const auto &m = model.mechanism(i);
        if (m.detectors.size() > 2) {
            throw ContractViolation("virtual_qubit_map: mechanism " + std::to_string(i) + " has " +
                                    std::to_string(m.detectors.size()) + " detectors");
        }
        auto [it, inserted] = index.emplace(m.detectors, groups.size());
        if (inserted) {
            groups.push_back({m.detectors, 0, {}});
        }
        groups[it->second].mechanisms.push_back(i);
    }
    const auto &code = model.code();
    for (auto &g : groups) {
        std::vector<double> probs;
        for (size_t i : g.mechanisms) {
            probs.push_back(model.mechanism(i).probability);
        }
        g.effective_probability = odd_parity_probability(probs);
        if (g.mechanisms.size() < 2) {
            continue;
        }
        if (!code) {
            throw ContractViolation("virtual_qubit_map: stabilizer check of grouped mechanisms needs a code");
        }
        const auto &first = model.mechanism(g.mechanisms[0]).pauli;
        for (size_t t = 1; t < g.mechanisms.size(); ++t) {
            PauliOp product = multiply(first, model.mechanism(g.mechanisms[t]).pauli);
            if (!code->stabilizer_span().contains(product)) {
                std::string dets;
                for (uint32_t det : g.detectors) {
                    dets += " D" + std::to_string(det);
                }
                throw StructuralError("mechanisms " + std::to_string(g.mechanisms[0]) + " and " +
                                      std::to_string(g.mechanisms[t]) + " share detectors{" + dets +
                                      " } but their product is not a stabilizer");
            }
        }
    }
    return groups;
}

}  // namespace surfcorr
