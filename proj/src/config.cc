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

#include "surfcorr/config.h"

#include <set>

#include "json.hpp"
#include "surfcorr/errors.h"

namespace surfcorr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &field, const std::string &why) {
    throw ConfigError("config field '" + field + "': " + why);
}

const json &require(const json &doc, const std::string &field) {
    auto it = doc.find(field);
    if (it == doc.end()) {
        fail(field, "missing");
    }
    return *it;
}

int64_t get_int(const json &v, const std::string &field) {
    if (!v.is_number_integer()) {
        fail(field, "expected an integer");
    }
    return v.get<int64_t>();
}

double get_number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        fail(field, "expected a number");
    }
    return v.get<double>();
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> known = {"experiment", "family", "k",   "d",   "p",      "p_cor_ratio",
                                                "shots",      "seed",   "out", "rounds", "threads"};
    for (const auto &[key, value] : doc.items()) {
        if (!known.count(key)) {
            fail(key, "unknown field");
        }
    }

    ExperimentConfig cfg;
    const json &exp = require(doc, "experiment");
    if (exp == "code-capacity") {
        cfg.experiment = ExperimentKind::kCodeCapacity;
    } else if (exp == "circuit") {
        cfg.experiment = ExperimentKind::kCircuit;
    } else {
        fail("experiment", "expected \"code-capacity\" or \"circuit\"");
    }

    const json &fam = require(doc, "family");
    if (!fam.is_string()) {
        fail("family", "expected a string");
    }
    cfg.family = fam.get<std::string>();
    if (doc.contains("k")) {
        cfg.k = static_cast<int>(get_int(doc["k"], "k"));
    }
    if (cfg.experiment == ExperimentKind::kCodeCapacity) {
        if (cfg.family == "iid") {
            cfg.noise_family = NoiseFamily::kIid;
        } else if (cfg.family == "type1") {
            cfg.noise_family = NoiseFamily::kType1;
            if (!doc.contains("k")) {
                fail("k", "required for type1");
            }
            if (cfg.k < 2) {
                fail("k", "must be at least 2");
            }
        } else if (cfg.family == "type2") {
            cfg.noise_family = NoiseFamily::kType2;
        } else {
            fail("family", "code-capacity family must be iid, type1 or type2");
        }
    } else {
        if (cfg.family == "none") {
            cfg.correlated_family = CorrelatedFamily::kNone;
        } else if (cfg.family == "type1") {
            cfg.correlated_family = CorrelatedFamily::kType1K2;
            if (doc.contains("k") && cfg.k != 2) {
                fail("k", "circuit type1 correlations have k = 2");
            }
            cfg.k = 2;
        } else if (cfg.family == "type2") {
            cfg.correlated_family = CorrelatedFamily::kType2;
        } else {
            fail("family", "circuit family must be none, type1 or type2");
        }
    }

    const json &ds = require(doc, "d");
    if (!ds.is_array() || ds.empty()) {
        fail("d", "expected a non-empty array");
    }
    for (const auto &v : ds) {
        int64_t d = get_int(v, "d");
        if (d < 2 || d > 101) {
            fail("d", "distance " + std::to_string(d) + " outside [2, 101]");
        }
        if (cfg.noise_family == NoiseFamily::kType1 && cfg.experiment == ExperimentKind::kCodeCapacity && d < cfg.k) {
            fail("d", "distance " + std::to_string(d) + " is smaller than k");
        }
        cfg.d.push_back(static_cast<int>(d));
    }

    const json &ps = require(doc, "p");
    if (!ps.is_array() || ps.empty()) {
        fail("p", "expected a non-empty array");
    }
    for (const auto &v : ps) {
        double p = get_number(v, "p");
        if (!(p >= 0 && p < 0.5)) {
            fail("p", "value " + v.dump() + " outside [0, 0.5)");
        }
        cfg.p.push_back(p);
    }

    if (cfg.experiment == ExperimentKind::kCircuit) {
        cfg.p_cor_ratio = get_number(require(doc, "p_cor_ratio"), "p_cor_ratio");
        if (cfg.p_cor_ratio < 0) {
            fail("p_cor_ratio", "must be non-negative");
        }
        for (double p : cfg.p) {
            if (!(p * cfg.p_cor_ratio < 0.5)) {
                fail("p_cor_ratio", "p_cor = p * ratio reaches 0.5");
            }
        }
    } else if (doc.contains("p_cor_ratio")) {
        double r = get_number(doc["p_cor_ratio"], "p_cor_ratio");
        if (r != 0) {
            fail("p_cor_ratio", "only meaningful for circuit experiments");
        }
    }

    int64_t shots = get_int(require(doc, "shots"), "shots");
    if (shots < 1) {
        fail("shots", "must be at least 1");
    }
    cfg.shots = static_cast<uint64_t>(shots);
    const json &seed = require(doc, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<int64_t>() >= 0)) {
        fail("seed", "expected a non-negative integer");
    }
    cfg.seed = seed.get<uint64_t>();
    const json &out = require(doc, "out");
    if (!out.is_string() || out.get<std::string>().empty()) {
        fail("out", "expected a non-empty path string");
    }
    cfg.out = out.get<std::string>();
    if (doc.contains("rounds")) {
        int64_t r = get_int(doc["rounds"], "rounds");
        if (r < 0) {
            fail("rounds", "must be non-negative (0 means rounds = d)");
        }
        cfg.rounds = static_cast<int>(r);
    }
    if (doc.contains("threads")) {
        int64_t t = get_int(doc["threads"], "threads");
        if (t < 1 || t > 1024) {
            fail("threads", "must be in [1, 1024]");
        }
        cfg.threads = static_cast<unsigned>(t);
    }
    return cfg;
}

}  // namespace surfcorr
