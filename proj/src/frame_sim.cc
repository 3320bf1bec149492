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

#include "surfcorr/frame_sim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "surfcorr/errors.h"

namespace surfcorr {

namespace {

constexpr char kPauliChar[4] = {'I', 'X', 'Y', 'Z'};

size_t num_groups(const Instruction &inst) {
    switch (inst.kind) {
        case GateKind::kDepolarize2:
            return inst.targets.size() / 2;
        case GateKind::kCorrelatedZ:
            return 1;
        default:
            return inst.targets.size();
    }
}

size_t num_outcomes(const Instruction &inst) {
    return inst.kind == GateKind::kDepolarize2 ? 15 : 1;
}

bool has_faults(const Instruction &inst) {
    return inst.probability > 0 && (is_noise(inst.kind) || inst.kind == GateKind::kMeasureX ||
                                    inst.kind == GateKind::kMeasureZ);
}

double outcome_probability(const Instruction &inst) {
    return inst.kind == GateKind::kDepolarize2 ? inst.probability / 15 : inst.probability;
}

using Symptom = std::pair<std::vector<uint32_t>, uint64_t>;

std::string symptom_text(const Symptom &s) {
    std::string out;
    for (uint32_t d : s.first) {
        out += " D" + std::to_string(d);
    }
    if (s.second) {
        out += " L0";
    }
    return out;
}

// Splits `target` into a disjoint union of primitives (each a subset), matching the observable bit.
bool decompose(const std::vector<uint32_t> &remaining, uint64_t obs, const std::map<Symptom, double> &primitives,
               const std::map<uint32_t, std::vector<const Symptom *>> &by_detector, std::vector<const Symptom *> &chosen,
               int budget) {
    if (remaining.empty()) {
        return obs == 0;
    }
    if (budget == 0) {
        return false;
    }
    auto it = by_detector.find(remaining.front());
    if (it == by_detector.end()) {
        return false;
    }
    for (const Symptom *cand : it->second) {
        if (!std::includes(remaining.begin(), remaining.end(), cand->first.begin(), cand->first.end())) {
            continue;
        }
        std::vector<uint32_t> rest;
        std::set_difference(remaining.begin(), remaining.end(), cand->first.begin(), cand->first.end(),
                            std::back_inserter(rest));
        chosen.push_back(cand);
        if (decompose(rest, obs ^ cand->second, primitives, by_detector, chosen, budget - 1)) {
            return true;
        }
        chosen.pop_back();
    }
    return false;
}

NoiseModel graph_model(const std::map<Symptom, double> &parts, const ModelDescriptor &desc,
                       std::shared_ptr<const PlanarCode> code, size_t num_detectors) {
    std::vector<ErrorMechanism> mechs;
    for (const auto &[sym, p] : parts) {
        ErrorMechanism m;
        m.probability = p;
        m.detectors = sym.first;
        m.logical_mask = sym.second;
        mechs.push_back(std::move(m));
    }
    return NoiseModel(desc, std::move(code), num_detectors, std::move(mechs));
}

double xor_probability(double a, double b) {
    return a * (1 - b) + b * (1 - a);
}

}  // namespace

std::vector<FaultSite> enumerate_fault_sites(const CliffordCircuit &circuit) {
    std::vector<FaultSite> sites;
    for (uint32_t i = 0; i < circuit.instructions.size(); ++i) {
        const Instruction &inst = circuit.instructions[i];
        if (!has_faults(inst)) {
            continue;
        }
        double q = outcome_probability(inst);
        for (uint32_t g = 0; g < num_groups(inst); ++g) {
            for (uint32_t o = 0; o < num_outcomes(inst); ++o) {
                sites.push_back({i, g, o, q});
            }
        }
    }
    return sites;
}

std::string describe_fault(const CliffordCircuit &circuit, const FaultSite &site) {
    const Instruction &inst = circuit.instructions.at(site.instruction);
    std::string out = std::string(gate_name(inst.kind)) + " at instruction " + std::to_string(site.instruction);
    if (inst.kind == GateKind::kDepolarize2) {
        uint32_t code = site.outcome + 1;
        out += " on qubits " + std::to_string(inst.targets[2 * site.group]) + "," +
               std::to_string(inst.targets[2 * site.group + 1]) + " outcome " + kPauliChar[code >> 2] +
               kPauliChar[code & 3];
    } else if (inst.kind == GateKind::kCorrelatedZ) {
        out += " on qubits";
        for (uint32_t q : inst.targets) {
            out += " " + std::to_string(q);
        }
    } else {
        out += " on qubit " + std::to_string(inst.targets[site.group]);
    }
    return out;
}

FrameSimulator::FrameSimulator(const CliffordCircuit &circuit)
    : circuit_(circuit),
      x_(circuit.num_qubits),
      z_(circuit.num_qubits),
      record_(circuit.num_measurements) {
    uint32_t m = 0;
    for (const auto &inst : circuit.instructions) {
        measurement_base_.push_back(m);
        if (inst.kind == GateKind::kMeasureX || inst.kind == GateKind::kMeasureZ) {
            m += static_cast<uint32_t>(inst.targets.size());
        }
        double q = has_faults(inst) ? outcome_probability(inst) : 0;
        log_keep_.push_back(q > 0 && q < 1 ? std::log1p(-q) : 0);
    }
    for (const auto &det : circuit.detectors) {
        for (uint32_t r : det.measurements) {
            if (r >= circuit.num_measurements) {
                throw ContractViolation("detector references missing measurement " + std::to_string(r));
            }
        }
    }
}

void FrameSimulator::apply_fault(size_t inst_index, uint32_t group, uint32_t outcome, uint64_t mask) {
    const Instruction &inst = circuit_.instructions[inst_index];
    switch (inst.kind) {
        case GateKind::kDepolarize2: {
            uint32_t code = outcome + 1;
            uint32_t paulis[2] = {code >> 2, code & 3};
            for (int k = 0; k < 2; ++k) {
                uint32_t q = inst.targets[2 * group + k];
                if (paulis[k] == 1 || paulis[k] == 2) {
                    x_[q] ^= mask;
                }
                if (paulis[k] == 2 || paulis[k] == 3) {
                    z_[q] ^= mask;
                }
            }
            break;
        }
        case GateKind::kZError:
            z_[inst.targets[group]] ^= mask;
            break;
        case GateKind::kCorrelatedZ:
            for (uint32_t q : inst.targets) {
                z_[q] ^= mask;
            }
            break;
        case GateKind::kMeasureX:
        case GateKind::kMeasureZ:
            record_[measurement_base_[inst_index] + group] ^= mask;
            break;
        default:
            break;
    }
}

template <typename Inject>
void FrameSimulator::run(Inject &&inject, ShotBatch &out) {
    std::fill(x_.begin(), x_.end(), 0);
    std::fill(z_.begin(), z_.end(), 0);
    for (size_t i = 0; i < circuit_.instructions.size(); ++i) {
        const Instruction &inst = circuit_.instructions[i];
        const auto &t = inst.targets;
        switch (inst.kind) {
            case GateKind::kResetX:
            case GateKind::kResetZ:
                for (uint32_t q : t) {
                    x_[q] = 0;
                    z_[q] = 0;
                }
                break;
            case GateKind::kH:
                for (uint32_t q : t) {
                    std::swap(x_[q], z_[q]);
                }
                break;
            case GateKind::kCx:
                for (size_t k = 0; k < t.size(); k += 2) {
                    x_[t[k + 1]] ^= x_[t[k]];
                    z_[t[k]] ^= z_[t[k + 1]];
                }
                break;
            case GateKind::kMeasureX:
                for (size_t k = 0; k < t.size(); ++k) {
                    record_[measurement_base_[i] + k] = z_[t[k]];
                }
                break;
            case GateKind::kMeasureZ:
                for (size_t k = 0; k < t.size(); ++k) {
                    record_[measurement_base_[i] + k] = x_[t[k]];
                }
                break;
            default:
                break;
        }
        inject(i);
    }
    out.detectors.assign(circuit_.detectors.size(), 0);
    for (size_t d = 0; d < circuit_.detectors.size(); ++d) {
        uint64_t w = 0;
        for (uint32_t r : circuit_.detectors[d].measurements) {
            w ^= record_[r];
        }
        out.detectors[d] = w;
    }
    out.observable = 0;
    for (uint32_t r : circuit_.observable) {
        out.observable ^= record_[r];
    }
}

void FrameSimulator::sample_batch(Rng &rng, ShotBatch &out) {
    run(
        [&](size_t i) {
            const Instruction &inst = circuit_.instructions[i];
            if (!has_faults(inst)) {
                return;
            }
            double q = outcome_probability(inst);
            uint64_t outcomes = num_outcomes(inst);
            uint64_t trials = num_groups(inst) * outcomes * 64;
            auto hit = [&](uint64_t t) {
                uint64_t lane = t & 63;
                uint64_t rest = t >> 6;
                apply_fault(i, static_cast<uint32_t>(rest / outcomes), static_cast<uint32_t>(rest % outcomes),
                            uint64_t{1} << lane);
            };
            if (q >= 1) {
                for (uint64_t t = 0; t < trials; ++t) {
                    hit(t);
                }
                return;
            }
            // Geometric gaps between faulty trials.
            double log_keep = log_keep_[i];
            double pos = -1;
            while (true) {
                double u = uniform01(rng);
                pos += 1 + std::floor(std::log1p(-u) / log_keep);
                if (pos >= static_cast<double>(trials)) {
                    break;
                }
                hit(static_cast<uint64_t>(pos));
            }
        },
        out);
}

void FrameSimulator::forced_batch(std::span<const FaultSite> faults, ShotBatch &out) {
    if (faults.size() > 64) {
        throw ContractViolation("forced_batch takes at most 64 faults");
    }
    std::vector<std::pair<FaultSite, uint64_t>> injections;
    for (size_t j = 0; j < faults.size(); ++j) {
        injections.emplace_back(faults[j], uint64_t{1} << j);
    }
    run_forced(std::move(injections), out);
}

void FrameSimulator::forced_sets(std::span<const std::vector<FaultSite>> lanes, ShotBatch &out) {
    if (lanes.size() > 64) {
        throw ContractViolation("forced_sets takes at most 64 lanes");
    }
    std::vector<std::pair<FaultSite, uint64_t>> injections;
    for (size_t j = 0; j < lanes.size(); ++j) {
        for (const auto &f : lanes[j]) {
            injections.emplace_back(f, uint64_t{1} << j);
        }
    }
    run_forced(std::move(injections), out);
}

void FrameSimulator::run_forced(std::vector<std::pair<FaultSite, uint64_t>> injections, ShotBatch &out) {
    for (const auto &[f, mask] : injections) {
        if (f.instruction >= circuit_.instructions.size()) {
            throw ContractViolation("fault site refers to a missing instruction");
        }
    }
    std::stable_sort(injections.begin(), injections.end(),
                     [](const auto &a, const auto &b) { return a.first.instruction < b.first.instruction; });
    size_t next = 0;
    run(
        [&](size_t i) {
            while (next < injections.size() && injections[next].first.instruction == i) {
                const auto &[f, mask] = injections[next];
                apply_fault(i, f.group, f.outcome, mask);
                ++next;
            }
        },
        out);
}

FrameSamples pauli_frame_sample(const CliffordCircuit &circuit, size_t shots, Rng &rng) {
    FrameSimulator sim(circuit);
    FrameSamples result;
    result.detectors.reserve(shots);
    ShotBatch batch;
    for (size_t done = 0; done < shots; done += 64) {
        sim.sample_batch(rng, batch);
        size_t take = std::min<size_t>(64, shots - done);
        for (size_t s = 0; s < take; ++s) {
            BitVec bits(circuit.num_detectors());
            for (size_t d = 0; d < batch.detectors.size(); ++d) {
                if ((batch.detectors[d] >> s) & 1) {
                    bits.set(d, true);
                }
            }
            result.detectors.push_back(std::move(bits));
            result.observable_flips.push_back((batch.observable >> s) & 1);
        }
    }
    return result;
}

void unpack_shot(const ShotBatch &batch, size_t shot, std::vector<uint32_t> &fired) {
    fired.clear();
    for (size_t d = 0; d < batch.detectors.size(); ++d) {
        if ((batch.detectors[d] >> shot) & 1) {
            fired.push_back(static_cast<uint32_t>(d));
        }
    }
}

CircuitErrorModel extract_mechanisms(const CliffordCircuit &circuit, std::shared_ptr<const PlanarCode> code) {
    CircuitErrorModel result;
    const size_t num_det = circuit.num_detectors();
    for (const auto &det : circuit.detectors) {
        result.detector_types.push_back(det.type);
    }
    ModelDescriptor desc;
    desc.family = NoiseFamily::kCircuit;
    desc.d = code ? code->distance() : 0;

    std::vector<FaultSite> sites = enumerate_fault_sites(circuit);
    FrameSimulator sim(circuit);
    ShotBatch batch;
    std::map<Symptom, double> raw;
    std::map<Symptom, size_t> first_site;
    for (size_t start = 0; start < sites.size(); start += 64) {
        size_t take = std::min<size_t>(64, sites.size() - start);
        std::span<const FaultSite> chunk(sites.data() + start, take);
        sim.forced_batch(chunk, batch);
        for (size_t j = 0; j < take; ++j) {
            Symptom s;
            for (size_t d = 0; d < num_det; ++d) {
                if ((batch.detectors[d] >> j) & 1) {
                    s.first.push_back(static_cast<uint32_t>(d));
                }
            }
            s.second = (batch.observable >> j) & 1 ? kFlipsLogicalXReadout : 0;
            if (s.first.empty() && s.second == 0) {
                continue;
            }
            auto [it, inserted] = raw.try_emplace(s, 0.0);
            it->second = xor_probability(it->second, chunk[j].probability);
            if (inserted) {
                first_site.emplace(std::move(s), start + j);
            }
        }
    }

    std::vector<ErrorMechanism> raw_mechs;
    for (const auto &[sym, p] : raw) {
        ErrorMechanism m;
        m.probability = p;
        m.detectors = sym.first;
        m.logical_mask = sym.second;
        raw_mechs.push_back(std::move(m));
    }
    result.raw = NoiseModel(desc, code, num_det, std::move(raw_mechs));

    // Split every symptom into its X-detector and Z-detector halves.
    struct Part {
        Symptom x;
        Symptom z;
        double p;
        size_t site;
    };
    std::vector<Part> parts;
    for (const auto &[sym, p] : raw) {
        Part part{{{}, sym.second}, {{}, 0}, p, first_site.at(sym)};
        for (uint32_t d : sym.first) {
            (result.detector_types[d] == CheckType::kX ? part.x.first : part.z.first).push_back(d);
        }
        parts.push_back(std::move(part));
    }

    for (int graph = 0; graph < 2; ++graph) {
        std::map<Symptom, double> primitives;
        std::vector<const Part *> large;
        for (const auto &part : parts) {
            const Symptom &s = graph == 0 ? part.x : part.z;
            if (s.first.empty() && s.second == 0) {
                continue;
            }
            if (s.first.size() <= 2) {
                auto &q = primitives[s];
                q = xor_probability(q, part.p);
            } else {
                large.push_back(&part);
            }
        }
        std::map<uint32_t, std::vector<const Symptom *>> by_detector;
        for (const auto &[s, p] : primitives) {
            for (uint32_t d : s.first) {
                by_detector[d].push_back(&s);
            }
        }
        // Prefer two-detector edges, then boundary edges.
        for (auto &[d, list] : by_detector) {
            std::stable_sort(list.begin(), list.end(),
                             [](const Symptom *a, const Symptom *b) { return a->first.size() > b->first.size(); });
        }
        std::vector<std::pair<const Symptom *, double>> additions;
        for (const Part *part : large) {
            const Symptom &s = graph == 0 ? part->x : part->z;
            std::vector<const Symptom *> chosen;
            if (!decompose(s.first, s.second, primitives, by_detector, chosen, static_cast<int>(s.first.size()))) {
                throw StructuralError("fault " + describe_fault(circuit, sites[part->site]) + " has symptom" +
                                      symptom_text(s) + " that is not a product of single-edge symptoms");
            }
            for (const Symptom *c : chosen) {
                additions.emplace_back(c, part->p);
            }
        }
        for (const auto &[sym, p] : additions) {
            auto &q = primitives[*sym];
            q = xor_probability(q, p);
        }
        (graph == 0 ? result.x_graph : result.z_graph) = graph_model(primitives, desc, code, num_det);
    }
    return result;
}

}  // namespace surfcorr
