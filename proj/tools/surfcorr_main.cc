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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "surfcorr/config.h"
#include "surfcorr/equivalence.h"
#include "surfcorr/errors.h"
#include "surfcorr/experiment.h"
#include "surfcorr/frame_sim.h"
#include "surfcorr/matching.h"
#include "surfcorr/svg_plot.h"
#include "surfcorr/threshold.h"

namespace {

using namespace surfcorr;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw ConfigError("cannot write '" + path + "'");
    }
}

NoiseModel code_capacity_model(const std::string &family, int d, int k, double p) {
    CodeCapacityCell cell;
    cell.family = parse_family(family);
    cell.d = d;
    cell.k = k;
    cell.p = p;
    if (cell.family == NoiseFamily::kType1 && k < 2) {
        throw ConfigError("--k is required for type1 and must be at least 2");
    }
    if (d < 2) {
        throw ConfigError("--d must be at least 2");
    }
    if (cell.family == NoiseFamily::kType1 && k > d) {
        throw ConfigError("--k must not exceed --d");
    }
    if (!(p >= 0 && p <= 1)) {
        throw ConfigError("--p must lie in [0, 1]");
    }
    return build_code_capacity_model(cell);
}

CorrelatedFamily correlated_family(const std::string &name) {
    if (name == "none") {
        return CorrelatedFamily::kNone;
    }
    if (name == "type1") {
        return CorrelatedFamily::kType1K2;
    }
    if (name == "type2") {
        return CorrelatedFamily::kType2;
    }
    throw ConfigError("circuit family must be none, type1 or type2, got '" + name + "'");
}

std::string join(const std::vector<uint32_t> &v, const std::string &prefix = "") {
    std::string out;
    for (uint32_t x : v) {
        out += (out.empty() ? "" : " ") + prefix + std::to_string(x);
    }
    return out;
}

int cmd_sample(const std::string &config_path) {
    ExperimentConfig cfg = parse_config(read_file(config_path));
    RunOptions opts;
    opts.seed = cfg.seed;
    opts.shots = cfg.shots;
    opts.threads = cfg.threads;
    std::vector<RunRecord> records;
    if (cfg.experiment == ExperimentKind::kCodeCapacity) {
        records = run_code_capacity(cfg.noise_family, cfg.k, cfg.d, cfg.p, opts);
    } else {
        records = run_circuit_level(cfg.correlated_family, cfg.d, cfg.p, cfg.p_cor_ratio, cfg.rounds, opts);
    }
    write_file(cfg.out, to_csv(records));
    for (const auto &warning : monotonicity_violations(records)) {
        std::cerr << "warning: non-monotone curve: " << warning << "\n";
    }
    std::cout << "wrote " << records.size() << " records to " << cfg.out << "\n";
    return kExitOk;
}

int cmd_decode(const std::string &dem_path, const std::string &syndrome_text) {
    for (char c : syndrome_text) {
        if (c != '0' && c != '1') {
            throw ConfigError("--syndrome must be a string of 0 and 1");
        }
    }
    NoiseModel model;
    DetectorGraph graph;
    try {
        model = NoiseModel::parse_dem(read_file(dem_path), syndrome_text.size());
        graph = DetectorGraph::build(model);
    } catch (const ContractViolation &e) {
        throw ConfigError(dem_path + ": " + e.what());
    }
    if (syndrome_text.size() != model.num_detectors()) {
        throw ConfigError("syndrome has " + std::to_string(syndrome_text.size()) + " bits but the model has " +
                          std::to_string(model.num_detectors()) + " detectors");
    }
    MatchingResult result = graph.decode(BitVec::from_string(syndrome_text));
    std::cout << "pairs:";
    for (const auto &pair : result.pairs) {
        std::cout << " D" << pair.first << "-" << (pair.second ? "D" + std::to_string(*pair.second) : "boundary");
    }
    std::cout << "\ncorrection_mechanisms: " << join(result.mechanisms) << "\n";
    std::cout << "logical_flip: L0=" << (result.logical_mask & 1) << " L1=" << ((result.logical_mask >> 1) & 1) << "\n";
    std::cout << "total_weight: " << result.total_weight << "\n";
    return kExitOk;
}

int cmd_threshold(const std::string &csv_path, int resamples, uint64_t seed) {
    auto records = parse_csv(read_file(csv_path));
    ThresholdOptions opts;
    opts.resamples = resamples;
    opts.seed = seed;
    ThresholdEstimate est = estimate_threshold(curve_points(records), opts);
    std::cout << "p_th: " << est.p_th << "\n";
    std::cout << "ci: " << est.ci.low << " " << est.ci.high << "\n";
    std::cout << "distances:";
    for (int d : est.distances) {
        std::cout << " " << d;
    }
    std::cout << "\npair_crossings:";
    for (double c : est.pair_crossings) {
        std::cout << " " << c;
    }
    std::cout << "\nmethod: " << est.method << "\n";
    return kExitOk;
}

int cmd_symmetry(const std::string &family, int d, int k) {
    NoiseModel model = code_capacity_model(family, d, k, 0.1);
    SymmetryReport report = compute_s_sys(model, *model.code());
    std::cout << report.str(*model.code());
    return kExitOk;
}

int cmd_decompose(const std::string &family, int d, int k, double p) {
    NoiseModel model = code_capacity_model(family, d, k, p);
    auto parts = decompose_by_components(model);
    std::cout << "components: " << parts.size() << "\n";
    for (size_t c = 0; c < parts.size(); ++c) {
        auto support = parts[c].detector_support();
        std::cout << "component " << c << " mechanisms=" << parts[c].size() << " detectors=" << support.size()
                  << " : " << join(support, "D") << "\n";
    }
    auto lemma = lemma1_check(model);
    std::cout << "disjoint_supports: " << (lemma ? (*lemma ? "true" : "false") : "not-applicable") << "\n";
    for (size_t c = 0; c < parts.size(); ++c) {
        auto vq = virtual_qubit_map(parts[c]);
        size_t grouped = 0;
        for (const auto &q : vq) {
            grouped += q.mechanisms.size() > 1;
        }
        std::cout << "component " << c << " virtual_qubits=" << vq.size() << " multi_mechanism_groups=" << grouped
                  << "\n";
    }
    return kExitOk;
}

int cmd_dem(const std::string &experiment, const std::string &family, int d, int k, int rounds, double p,
            double p_cor, bool raw, bool circuit_text) {
    if (experiment == "code-capacity") {
        std::cout << code_capacity_model(family, d, k, p).to_dem();
        return kExitOk;
    }
    if (experiment != "circuit") {
        throw ConfigError("--experiment must be circuit or code-capacity");
    }
    if (d < 2) {
        throw ConfigError("--d must be at least 2");
    }
    auto code = std::make_shared<const PlanarCode>(PlanarCode::build(d));
    CliffordCircuit circuit =
        attach_noise(build_memory_circuit(*code, rounds > 0 ? rounds : d), *code, p, p_cor, correlated_family(family));
    if (circuit_text) {
        std::cout << circuit.str();
        return kExitOk;
    }
    CircuitErrorModel em = extract_mechanisms(circuit, code);
    if (raw) {
        std::cout << em.raw.to_dem();
    } else {
        std::cout << "# X-detector graph\n" << em.x_graph.to_dem() << "# Z-detector graph\n" << em.z_graph.to_dem();
    }
    return kExitOk;
}

int cmd_plot(const std::string &csv_path, const std::string &out_path, const std::string &title) {
    auto records = parse_csv(read_file(csv_path));
    write_file(out_path, render_svg(records, title));
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Surface-code correlated-noise decoding toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    auto *sample = app.add_subcommand("sample", "Run a Monte Carlo experiment from a JSON config and write CSV");
    sample->add_option("config", config_path, "Experiment config (JSON)")->required();

    std::string dem_path;
    std::string syndrome;
    auto *decode = app.add_subcommand("decode", "Decode one syndrome against a mechanism-list file");
    decode->add_option("--dem", dem_path, "Mechanism list")->required();
    decode->add_option("--syndrome", syndrome, "Detector bits, e.g. 0110")->required();

    std::string csv_path;
    int resamples = 1000;
    uint64_t seed = 0x5eed;
    auto *threshold = app.add_subcommand("threshold", "Estimate the threshold from a CSV of runs");
    threshold->add_option("csv", csv_path, "Run records")->required();
    threshold->add_option("--resamples", resamples, "Bootstrap resamples")->check(CLI::Range(0, 1000000));
    threshold->add_option("--seed", seed, "Bootstrap seed");

    std::string family = "type1";
    int d = 5;
    int k = 2;
    double p = 0.1;
    auto *symmetry = app.add_subcommand("symmetry-check", "Report the symmetry group of a correlated model");
    symmetry->add_option("--family", family, "iid, type1 or type2")->required();
    symmetry->add_option("--d", d, "Code distance")->required();
    symmetry->add_option("--k", k, "Correlation length (type1)");

    auto *decompose = app.add_subcommand("decompose", "Split a model into independent syndrome components");
    decompose->add_option("--family", family, "type1 or type2")->required();
    decompose->add_option("--d", d, "Code distance")->required();
    decompose->add_option("--k", k, "Correlation length (type1)");
    decompose->add_option("--p", p, "Mechanism probability");

    std::string experiment = "circuit";
    int rounds = 0;
    double p_cor = 0;
    bool raw = false;
    bool circuit_text = false;
    auto *dem = app.add_subcommand("dem", "Print the mechanism list of a model or memory circuit");
    dem->add_option("--experiment", experiment, "circuit or code-capacity");
    dem->add_option("--family", family, "Correlated family")->required();
    dem->add_option("--d", d, "Code distance")->required();
    dem->add_option("--k", k, "Correlation length (code-capacity type1)");
    dem->add_option("--rounds", rounds, "Extraction rounds (default d)");
    dem->add_option("--p", p, "Circuit or mechanism probability");
    dem->add_option("--p-cor", p_cor, "Correlated probability");
    dem->add_flag("--raw", raw, "Undecomposed symptoms");
    dem->add_flag("--circuit", circuit_text, "Print the annotated circuit instead");

    std::string out_path;
    std::string title = "Logical error rate";
    auto *plot = app.add_subcommand("plot", "Render run records as an SVG chart");
    plot->add_option("csv", csv_path, "Run records")->required();
    plot->add_option("--out", out_path, "SVG output path")->required();
    plot->add_option("--title", title, "Chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sample) {
            return cmd_sample(config_path);
        }
        if (*decode) {
            return cmd_decode(dem_path, syndrome);
        }
        if (*threshold) {
            return cmd_threshold(csv_path, resamples, seed);
        }
        if (*symmetry) {
            return cmd_symmetry(family, d, k);
        }
        if (*decompose) {
            return cmd_decompose(family, d, k, p);
        }
        if (*dem) {
            return cmd_dem(experiment, family, d, k, rounds, p, p_cor, raw, circuit_text);
        }
        if (*plot) {
            return cmd_plot(csv_path, out_path, title);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InfeasibleError &e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const StructuralError &e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::logic_error &e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
