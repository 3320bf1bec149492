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

#ifndef SURFCORR_EXPERIMENT_H
#define SURFCORR_EXPERIMENT_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "surfcorr/circuit.h"
#include "surfcorr/noise_model.h"
#include "surfcorr/threshold.h"

namespace surfcorr {

struct RunRecord {
    std::string family;
    int k = 0;
    int d = 0;
    /// 0 for code-capacity runs.
    int rounds = 0;
    double p = 0;
    double p_cor = 0;
    uint64_t shots = 0;
    uint64_t failures = 0;
    double logical_rate = 0;
    double ci_low = 0;
    double ci_high = 0;
    uint64_t seed = 0;

    /// Recomputes logical_rate and the Wilson interval from the counts.
    void refresh_statistics();
    bool same_cell(const RunRecord &other) const;
};

inline constexpr std::string_view kCsvHeader =
    "family,k,d,rounds,p,p_cor,shots,failures,logical_rate,ci_low,ci_high,seed";

std::string to_csv(const std::vector<RunRecord> &records);
std::vector<RunRecord> parse_csv(std::string_view text);
/// Adds the counts of `extra` to `base`; both must describe the same cell.
void merge_into(RunRecord &base, const RunRecord &extra);
std::vector<CurvePoint> curve_points(const std::vector<RunRecord> &records);

/// Shots per independently seeded shard. Shard s of a cell draws from stream_seed(seed, cell, s).
inline constexpr uint64_t kShardShots = 1000;

struct CodeCapacityCell {
    NoiseFamily family = NoiseFamily::kIid;
    int k = 0;
    int d = 0;
    double p = 0;
};

struct CircuitCell {
    CorrelatedFamily family = CorrelatedFamily::kNone;
    int d = 0;
    int rounds = 0;
    double p = 0;
    double p_cor = 0;
};

struct RunOptions {
    uint64_t seed = 1;
    uint64_t shots = 10000;
    /// Skips this many leading shots (rounded down to whole shards), so a later call can extend a cell.
    uint64_t first_shot = 0;
    unsigned threads = 1;
};

NoiseModel build_code_capacity_model(const CodeCapacityCell &cell);
RunRecord run_code_capacity_cell(const CodeCapacityCell &cell, const RunOptions &options);
RunRecord run_circuit_cell(const CircuitCell &cell, const RunOptions &options);

std::vector<RunRecord> run_code_capacity(NoiseFamily family, int k, const std::vector<int> &distances,
                                         const std::vector<double> &ps, const RunOptions &options);
std::vector<RunRecord> run_circuit_level(CorrelatedFamily family, const std::vector<int> &distances,
                                         const std::vector<double> &ps, double p_cor_ratio, int rounds,
                                         const RunOptions &options);

/// Returns records whose p lies among the grid points nearest the estimated crossing, extended to
/// `target_shots` each, merged into the input list.
using CellRunner = std::function<RunRecord(const RunRecord &cell, uint64_t first_shot, uint64_t shots)>;
std::vector<RunRecord> top_up_near_crossing(std::vector<RunRecord> records, uint64_t target_shots,
                                            const CellRunner &runner, size_t count = 4);

/// Records violating monotonicity in p by more than 3 standard deviations, as readable messages.
std::vector<std::string> monotonicity_violations(const std::vector<RunRecord> &records);

}  // namespace surfcorr

#endif
