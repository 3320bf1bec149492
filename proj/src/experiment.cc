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

#include "surfcorr/experiment.h"

#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "surfcorr/errors.h"
#include "surfcorr/frame_sim.h"
#include "surfcorr/matching.h"
#include "surfcorr/rng.h"

namespace surfcorr {

namespace {

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

uint64_t fnv1a(std::string_view text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

template <typename T>
T parse_number(std::string_view field, std::string_view name, size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ConfigError("csv line " + std::to_string(line) + ": bad " + std::string(name) + " '" +
                          std::string(field) + "'");
    }
    return value;
}

void check_decoder_probability(double p, const char *name) {
    if (!(p >= 0 && p < 0.5)) {
        throw ConfigError(std::string(name) + "=" + fmt(p) + " is outside the decoder weight domain [0, 0.5)");
    }
}

/// Runs `per_shard(shard, count, rng)` over the shards covering [first_shot, first_shot + shots) and
/// sums the returned failure counts.
uint64_t run_shards(uint64_t cell_id, const RunOptions &options,
                    const std::function<uint64_t(uint64_t count, Rng &rng)> &per_shard) {
    if (options.first_shot % kShardShots != 0) {
        throw ContractViolation("first_shot must be a multiple of " + std::to_string(kShardShots));
    }
    uint64_t first_shard = options.first_shot / kShardShots;
    uint64_t num_shards = (options.shots + kShardShots - 1) / kShardShots;
    std::vector<uint64_t> failures(num_shards, 0);
    std::atomic<uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            uint64_t s = next.fetch_add(1);
            if (s >= num_shards) {
                return;
            }
            uint64_t count = std::min(kShardShots, options.shots - s * kShardShots);
            Rng rng(stream_seed(options.seed, cell_id, first_shard + s));
            try {
                failures[s] = per_shard(count, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = num_shards;
                return;
            }
        }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(num_shards)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    uint64_t total = 0;
    for (uint64_t f : failures) {
        total += f;
    }
    return total;
}

std::string code_capacity_key(const CodeCapacityCell &cell) {
    return "code-capacity:" + std::string(to_string(cell.family)) + ":" + std::to_string(cell.k) + ":" +
           std::to_string(cell.d) + ":" + fmt(cell.p);
}

std::string circuit_key(const CircuitCell &cell) {
    return "circuit:" + std::string(to_string(cell.family)) + ":" + std::to_string(cell.d) + ":" +
           std::to_string(cell.rounds) + ":" + fmt(cell.p) + ":" + fmt(cell.p_cor);
}

}  // namespace

void RunRecord::refresh_statistics() {
    if (shots == 0) {
        logical_rate = ci_low = ci_high = 0;
        return;
    }
    logical_rate = static_cast<double>(failures) / static_cast<double>(shots);
    Interval ci = wilson_ci(failures, shots);
    ci_low = std::min(ci.low, logical_rate);
    ci_high = std::max(ci.high, logical_rate);
}

bool RunRecord::same_cell(const RunRecord &o) const {
    return std::tie(family, k, d, rounds, p, p_cor) == std::tie(o.family, o.k, o.d, o.rounds, o.p, o.p_cor);
}

std::string to_csv(const std::vector<RunRecord> &records) {
    std::string out(kCsvHeader);
    out += "\n";
    for (const auto &r : records) {
        out += r.family + "," + std::to_string(r.k) + "," + std::to_string(r.d) + "," + std::to_string(r.rounds) + "," +
               fmt(r.p) + "," + fmt(r.p_cor) + "," + std::to_string(r.shots) + "," + std::to_string(r.failures) + "," +
               fmt(r.logical_rate) + "," + fmt(r.ci_low) + "," + fmt(r.ci_high) + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

std::vector<RunRecord> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ConfigError("csv header must be exactly: " + std::string(kCsvHeader));
    }
    std::vector<RunRecord> records;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string field; std::getline(ls, field, ',');) {
            f.push_back(field);
        }
        if (f.size() != 12) {
            throw ConfigError("csv line " + std::to_string(line_no) + ": expected 12 fields, got " +
                              std::to_string(f.size()));
        }
        RunRecord r;
        r.family = f[0];
        r.k = parse_number<int>(f[1], "k", line_no);
        r.d = parse_number<int>(f[2], "d", line_no);
        r.rounds = parse_number<int>(f[3], "rounds", line_no);
        r.p = parse_number<double>(f[4], "p", line_no);
        r.p_cor = parse_number<double>(f[5], "p_cor", line_no);
        r.shots = parse_number<uint64_t>(f[6], "shots", line_no);
        r.failures = parse_number<uint64_t>(f[7], "failures", line_no);
        r.logical_rate = parse_number<double>(f[8], "logical_rate", line_no);
        r.ci_low = parse_number<double>(f[9], "ci_low", line_no);
        r.ci_high = parse_number<double>(f[10], "ci_high", line_no);
        r.seed = parse_number<uint64_t>(f[11], "seed", line_no);
        if (r.failures > r.shots) {
            throw ConfigError("csv line " + std::to_string(line_no) + ": failures exceed shots");
        }
        records.push_back(std::move(r));
    }
    return records;
}

void merge_into(RunRecord &base, const RunRecord &extra) {
    if (!base.same_cell(extra)) {
        throw ContractViolation("cannot merge records of different cells");
    }
    base.shots += extra.shots;
    base.failures += extra.failures;
    base.refresh_statistics();
}

std::vector<CurvePoint> curve_points(const std::vector<RunRecord> &records) {
    std::vector<CurvePoint> pts;
    for (const auto &r : records) {
        pts.push_back({r.d, r.p, r.shots, r.failures});
    }
    return pts;
}

NoiseModel build_code_capacity_model(const CodeCapacityCell &cell) {
    auto code = std::make_shared<const PlanarCode>(PlanarCode::build(cell.d));
    switch (cell.family) {
        case NoiseFamily::kIid:
            return build_iid_z(code, cell.p);
        case NoiseFamily::kType1:
            return build_type1(code, cell.k, cell.p);
        case NoiseFamily::kType2:
            return build_type2(code, cell.p);
        default:
            throw ConfigError("code-capacity family must be iid, type1 or type2, got " +
                              std::string(to_string(cell.family)));
    }
}

RunRecord run_code_capacity_cell(const CodeCapacityCell &cell, const RunOptions &options) {
    check_decoder_probability(cell.p, "p");
    NoiseModel model = build_code_capacity_model(cell);
    const PlanarCode &code = *model.code();
    DetectorGraph graph = DetectorGraph::build(model);

    RunRecord rec;
    rec.family = std::string(to_string(cell.family));
    rec.k = cell.family == NoiseFamily::kType1 ? cell.k : 0;
    rec.d = cell.d;
    rec.p = cell.p;
    rec.shots = options.shots;
    rec.seed = options.seed;
    rec.failures = run_shards(fnv1a(code_capacity_key(cell)), options, [&](uint64_t count, Rng &rng) {
        uint64_t failures = 0;
        std::vector<size_t> fired;
        for (uint64_t s = 0; s < count; ++s) {
            model.sample_fired(rng, fired);
            MatchingResult result = graph.decode(model.syndrome_of(fired));
            if (code.residual_class(model.pauli_of(fired), result.correction) != LogicalClass::kStabilizer) {
                ++failures;
            }
        }
        return failures;
    });
    rec.refresh_statistics();
    return rec;
}

RunRecord run_circuit_cell(const CircuitCell &cell, const RunOptions &options) {
    check_decoder_probability(cell.p, "p");
    check_decoder_probability(cell.p_cor, "p_cor");
    int rounds = cell.rounds > 0 ? cell.rounds : cell.d;
    auto code = std::make_shared<const PlanarCode>(PlanarCode::build(cell.d));
    CliffordCircuit circuit =
        attach_noise(build_memory_circuit(*code, rounds), *code, cell.p, cell.p_cor, cell.family);
    CircuitErrorModel em = extract_mechanisms(circuit, code);
    DetectorGraph gx = DetectorGraph::build(em.x_graph);
    DetectorGraph gz = DetectorGraph::build(em.z_graph);

    RunRecord rec;
    rec.family = std::string(to_string(cell.family));
    rec.k = cell.family == CorrelatedFamily::kType1K2 ? 2 : 0;
    rec.d = cell.d;
    rec.rounds = rounds;
    rec.p = cell.p;
    rec.p_cor = cell.p_cor;
    rec.shots = options.shots;
    rec.seed = options.seed;
    CircuitCell keyed = cell;
    keyed.rounds = rounds;
    rec.failures = run_shards(fnv1a(circuit_key(keyed)), options, [&](uint64_t count, Rng &rng) {
        FrameSimulator sim(circuit);
        ShotBatch batch;
        std::vector<uint32_t> fired;
        std::vector<uint32_t> x_defects;
        std::vector<uint32_t> z_defects;
        uint64_t failures = 0;
        for (uint64_t done = 0; done < count; done += 64) {
            sim.sample_batch(rng, batch);
            uint64_t take = std::min<uint64_t>(64, count - done);
            for (uint64_t s = 0; s < take; ++s) {
                unpack_shot(batch, s, fired);
                x_defects.clear();
                z_defects.clear();
                for (uint32_t det : fired) {
                    (em.detector_types[det] == CheckType::kX ? x_defects : z_defects).push_back(det);
                }
                uint64_t predicted = gx.decode_defects(x_defects).logical_mask ^ gz.decode_defects(z_defects).logical_mask;
                bool flipped = (batch.observable >> s) & 1;
                if (static_cast<bool>(predicted & kFlipsLogicalXReadout) != flipped) {
                    ++failures;
                }
            }
        }
        return failures;
    });
    rec.refresh_statistics();
    return rec;
}

std::vector<RunRecord> run_code_capacity(NoiseFamily family, int k, const std::vector<int> &distances,
                                         const std::vector<double> &ps, const RunOptions &options) {
    for (double p : ps) {
        check_decoder_probability(p, "p");
    }
    std::vector<RunRecord> out;
    for (int d : distances) {
        for (double p : ps) {
            out.push_back(run_code_capacity_cell({family, k, d, p}, options));
        }
    }
    return out;
}

std::vector<RunRecord> run_circuit_level(CorrelatedFamily family, const std::vector<int> &distances,
                                         const std::vector<double> &ps, double p_cor_ratio, int rounds,
                                         const RunOptions &options) {
    for (double p : ps) {
        check_decoder_probability(p, "p");
        check_decoder_probability(p * p_cor_ratio, "p_cor");
    }
    std::vector<RunRecord> out;
    for (int d : distances) {
        for (double p : ps) {
            out.push_back(run_circuit_cell({family, d, rounds > 0 ? rounds : d, p, p * p_cor_ratio}, options));
        }
    }
    return out;
}

std::vector<RunRecord> top_up_near_crossing(std::vector<RunRecord> records, uint64_t target_shots,
                                            const CellRunner &runner, size_t count) {
    auto points = curve_points(records);
    auto crossings = pairwise_crossings(points);
    double sum = 0;
    for (double c : crossings) {
        sum += c;
    }
    auto near = nearest_grid_points(points, sum / static_cast<double>(crossings.size()), count);
    std::set<double> chosen(near.begin(), near.end());
    for (auto &rec : records) {
        if (chosen.count(rec.p) && rec.shots < target_shots) {
            merge_into(rec, runner(rec, rec.shots, target_shots - rec.shots));
        }
    }
    return records;
}

std::vector<std::string> monotonicity_violations(const std::vector<RunRecord> &records) {
    std::map<std::tuple<std::string, int, int, int>, std::vector<const RunRecord *>> curves;
    for (const auto &r : records) {
        curves[{r.family, r.k, r.d, r.rounds}].push_back(&r);
    }
    std::vector<std::string> out;
    for (auto &[key, list] : curves) {
        std::sort(list.begin(), list.end(), [](const RunRecord *a, const RunRecord *b) { return a->p < b->p; });
        for (size_t i = 0; i + 1 < list.size(); ++i) {
            const RunRecord &a = *list[i];
            const RunRecord &b = *list[i + 1];
            double va = a.logical_rate * (1 - a.logical_rate) / static_cast<double>(std::max<uint64_t>(a.shots, 1));
            double vb = b.logical_rate * (1 - b.logical_rate) / static_cast<double>(std::max<uint64_t>(b.shots, 1));
            if (b.logical_rate < a.logical_rate - 3 * std::sqrt(va + vb)) {
                out.push_back(a.family + " d=" + std::to_string(a.d) + ": rate drops from " + fmt(a.logical_rate) +
                              " at p=" + fmt(a.p) + " to " + fmt(b.logical_rate) + " at p=" + fmt(b.p));
            }
        }
    }
    return out;
}

}  // namespace surfcorr
