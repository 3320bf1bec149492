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

#ifndef SURFCORR_CONFIG_H
#define SURFCORR_CONFIG_H

#include <cstdint>
#include <string>
#include <vector>

#include "surfcorr/circuit.h"
#include "surfcorr/noise_model.h"

namespace surfcorr {

enum class ExperimentKind { kCodeCapacity, kCircuit };

/// Experiment description loaded from a JSON document such as
/// {"experiment": "code-capacity", "family": "type1", "k": 2, "d": [9, 15], "p": [0.02, 0.04],
///  "shots": 10000, "seed": 7, "out": "runs.csv"}.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::kCodeCapacity;
    /// Code capacity: iid, type1 or type2. Circuit: none, type1 (k = 2) or type2.
    std::string family;
    NoiseFamily noise_family = NoiseFamily::kIid;
    CorrelatedFamily correlated_family = CorrelatedFamily::kNone;
    int k = 0;
    std::vector<int> d;
    std::vector<double> p;
    double p_cor_ratio = 0;
    /// Circuit rounds; 0 means rounds = d.
    int rounds = 0;
    uint64_t shots = 10000;
    uint64_t seed = 1;
    std::string out;
    unsigned threads = 1;
};

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(std::string_view json_text);

}  // namespace surfcorr

#endif
