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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "surfcorr/config.h"
#include "surfcorr/errors.h"
#include "surfcorr/svg_plot.h"
#include "surfcorr/threshold.h"

namespace surfcorr {
namespace {

RunOptions options(uint64_t seed, uint64_t shots, uint64_t first_shot = 0, unsigned threads = 1) {
    RunOptions o;
    o.seed = seed;
    o.shots = shots;
    o.first_shot = first_shot;
    o.threads = threads;
    return o;
}

TEST(ExperimentTest, ZeroNoiseNeverFails) {
    auto cc = run_code_capacity(NoiseFamily::kIid, 0, {3, 5}, {0.0}, options(1, 2000));
    for (const auto &r : cc) EXPECT_EQ(r.failures, 0u);
    RunRecord circuit = run_circuit_cell({CorrelatedFamily::kType2, 3, 3, 0, 0}, options(1, 2000));
    EXPECT_EQ(circuit.failures, 0u);
    EXPECT_EQ(circuit.rounds, 3);
}

TEST(ExperimentTest, DecoderDomainGuard) {
    EXPECT_THROW(run_code_capacity(NoiseFamily::kIid, 0, {3}, {0.5}, options(1, 10)), ConfigError);
    EXPECT_THROW(run_circuit_level(CorrelatedFamily::kType2, {3}, {0.3}, 2.0, 0, options(1, 10)), ConfigError);
}

TEST(ExperimentTest, SameSeedSameCsv) {
    auto a = run_code_capacity(NoiseFamily::kType2, 0, {5, 7}, {0.04, 0.06}, options(42, 3000));
    auto b = run_code_capacity(NoiseFamily::kType2, 0, {5, 7}, {0.04, 0.06}, options(42, 3000));
    EXPECT_EQ(to_csv(a), to_csv(b));
    auto c = run_code_capacity(NoiseFamily::kType2, 0, {5, 7}, {0.04, 0.06}, options(43, 3000));
    EXPECT_NE(to_csv(a), to_csv(c));
    auto threaded = run_code_capacity(NoiseFamily::kType2, 0, {5, 7}, {0.04, 0.06}, options(42, 3000, 0, 3));
    EXPECT_EQ(to_csv(a), to_csv(threaded));
}

TEST(ExperimentTest, ShardsAreAdditive) {
    CodeCapacityCell cell{NoiseFamily::kType1, 3, 7, 0.11};
    RunRecord whole = run_code_capacity_cell(cell, options(9, 5000));
    RunRecord head = run_code_capacity_cell(cell, options(9, 2000));
    RunRecord tail = run_code_capacity_cell(cell, options(9, 3000, 2000));
    merge_into(head, tail);
    EXPECT_EQ(head.shots, whole.shots);
    EXPECT_EQ(head.failures, whole.failures);
    EXPECT_EQ(head.logical_rate, whole.logical_rate);
    EXPECT_THROW(run_code_capacity_cell(cell, options(9, 100, 150)), ContractViolation);

    CircuitCell cc{CorrelatedFamily::kType1K2, 3, 3, 0.01, 0.01};
    RunRecord cwhole = run_circuit_cell(cc, options(4, 2000));
    RunRecord chead = run_circuit_cell(cc, options(4, 1000));
    merge_into(chead, run_circuit_cell(cc, options(4, 1000, 1000)));
    EXPECT_EQ(chead.failures, cwhole.failures);
}

TEST(ExperimentTest, CsvRoundTrip) {
    RunRecord r;
    r.family = "type1";
    r.k = 3;
    r.d = 9;
    r.p = 0.105;
    r.shots = 10000;
    r.failures = 123;
    r.seed = 77;
    r.refresh_statistics();
    std::string text = to_csv({r});
    EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
    EXPECT_NE(text.find("type1,3,9,0,0.105,0,10000,123,0.0123,"), std::string::npos);
    auto parsed = parse_csv(text);
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(to_csv(parsed), text);
    EXPECT_THROW(parse_csv("family,k\n"), ConfigError);
    EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\niid,0,3\n"), ConfigError);
    EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\niid,0,3,0,0.1,0,10,11,0,0,0,1\n"), ConfigError);
}

TEST(ExperimentTest, RecordInvariants) {
    for (uint64_t f : {0u, 1u, 50u, 99u, 100u}) {
        RunRecord r;
        r.shots = 100;
        r.failures = f;
        r.refresh_statistics();
        EXPECT_LE(r.ci_low, r.logical_rate);
        EXPECT_GE(r.ci_high, r.logical_rate);
    }
    RunRecord a, b;
    a.family = "iid";
    b.family = "type2";
    EXPECT_THROW(merge_into(a, b), ContractViolation);
}

TEST(ExperimentTest, MonotonicityFlags) {
    std::vector<RunRecord> recs;
    for (auto [p, f] : std::vector<std::pair<double, uint64_t>>{{0.01, 10}, {0.02, 500}, {0.03, 100}, {0.04, 900}}) {
        RunRecord r;
        r.family = "iid";
        r.d = 5;
        r.p = p;
        r.shots = 10000;
        r.failures = f;
        r.refresh_statistics();
        recs.push_back(r);
    }
    auto v = monotonicity_violations(recs);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("p=0.02"), std::string::npos);
}

TEST(ExperimentTest, TopUpExtendsCellsNearCrossing) {
    std::vector<RunRecord> recs;
    for (int d : {5, 7}) {
        for (double p : {0.02, 0.03, 0.04, 0.05, 0.06, 0.07}) {
            RunRecord r;
            r.family = "iid";
            r.d = d;
            r.p = p;
            r.shots = 1000;
            r.failures = static_cast<uint64_t>(1000 * 0.5 / (1 + std::pow(0.047 / p, (d + 1) / 2.0)));
            r.refresh_statistics();
            recs.push_back(r);
        }
    }
    std::vector<std::pair<double, uint64_t>> calls;
    auto runner = [&](const RunRecord &cell, uint64_t first, uint64_t shots) {
        calls.emplace_back(cell.p, first);
        RunRecord extra = cell;
        extra.shots = shots;
        extra.failures = 0;
        return extra;
    };
    auto topped = top_up_near_crossing(recs, 5000, runner, 4);
    EXPECT_EQ(calls.size(), 8u);
    size_t extended = 0;
    for (const auto &r : topped) {
        if (r.shots == 5000) ++extended;
        EXPECT_TRUE(r.shots == 1000 || r.shots == 5000);
    }
    EXPECT_EQ(extended, 8u);
    // The extended cells are the 4 grid points closest to the estimated crossing.
    double crossing = pairwise_crossings(curve_points(recs)).at(0);
    std::vector<double> grid = {0.02, 0.03, 0.04, 0.05, 0.06, 0.07};
    std::sort(grid.begin(), grid.end(),
              [&](double a, double b) { return std::abs(a - crossing) < std::abs(b - crossing); });
    for (const auto &[p, first] : calls) {
        EXPECT_EQ(first, 1000u);
        EXPECT_LT(std::abs(p - crossing), std::abs(grid[4] - crossing) - 1e-9);
    }
}

// Below threshold, larger codes fail less often, with separated intervals.
TEST(ExperimentTest, SubThresholdOrdering) {
    auto recs = run_code_capacity(NoiseFamily::kIid, 0, {9, 15, 21}, {0.07}, options(5, 20000));
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_GT(recs[0].ci_low, recs[1].ci_high);
    EXPECT_GT(recs[1].ci_low, recs[2].ci_high);
    EXPECT_GT(recs[2].failures, 0u);
}

TEST(ExperimentTest, CircuitRatesFallWithDistance) {
    auto recs = run_circuit_level(CorrelatedFamily::kNone, {3, 5, 7}, {0.002}, 0, 0, options(8, 20000));
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_GT(recs[0].logical_rate, recs[1].logical_rate);
    EXPECT_GT(recs[1].logical_rate, recs[2].logical_rate);
}

TEST(ConfigTest, ParsesCodeCapacity) {
    ExperimentConfig cfg = parse_config(R"({"experiment":"code-capacity","family":"type1","k":3,"d":[9,15],
        "p":[0.1,0.11],"shots":100,"seed":5,"out":"x.csv"})");
    EXPECT_EQ(cfg.experiment, ExperimentKind::kCodeCapacity);
    EXPECT_EQ(cfg.noise_family, NoiseFamily::kType1);
    EXPECT_EQ(cfg.k, 3);
    EXPECT_EQ(cfg.d, (std::vector<int>{9, 15}));
    EXPECT_EQ(cfg.p, (std::vector<double>{0.1, 0.11}));
    EXPECT_EQ(cfg.shots, 100u);
    EXPECT_EQ(cfg.seed, 5u);
    EXPECT_EQ(cfg.out, "x.csv");
}

TEST(ConfigTest, ParsesCircuit) {
    ExperimentConfig cfg = parse_config(R"({"experiment":"circuit","family":"type2","d":[5],"p":[0.002],
        "p_cor_ratio":0.5,"shots":10,"seed":1,"out":"c.csv","rounds":3})");
    EXPECT_EQ(cfg.correlated_family, CorrelatedFamily::kType2);
    EXPECT_EQ(cfg.p_cor_ratio, 0.5);
    EXPECT_EQ(cfg.rounds, 3);
}

TEST(ConfigTest, ErrorsNameTheField) {
    const std::string base = R"("experiment":"code-capacity","d":[3],"shots":10,"seed":1,"out":"o.csv")";
    auto field_of = [](const std::string &text) -> std::string {
        try {
            parse_config(text);
        } catch (const ConfigError &e) {
            return e.what();
        }
        return "";
    };
    EXPECT_NE(field_of("{" + base + R"(,"family":"iid","p":[0.5]})").find("'p'"), std::string::npos);
    EXPECT_NE(field_of("{" + base + R"(,"family":"weird","p":[0.1]})").find("'family'"), std::string::npos);
    EXPECT_NE(field_of("{" + base + R"(,"family":"type1","p":[0.1]})").find("'k'"), std::string::npos);
    EXPECT_NE(field_of("{" + base + R"(,"family":"iid","p":[0.1],"bogus":1})").find("'bogus'"), std::string::npos);
    EXPECT_NE(field_of(R"({"experiment":"code-capacity","family":"iid","d":[3],"p":[0.1],"seed":1,"out":"o"})")
                  .find("'shots'"),
              std::string::npos);
    EXPECT_THROW(parse_config("not json"), ConfigError);
}

TEST(SvgPlotTest, DrawsOneLinePerCurve) {
    auto recs = run_code_capacity(NoiseFamily::kIid, 0, {3, 5}, {0.05, 0.1, 0.15}, options(1, 1000));
    std::string svg = render_svg(recs, "iid");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    size_t lines = 0;
    for (size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
    EXPECT_EQ(lines, 2u);
    EXPECT_NE(svg.find("d=5"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace surfcorr
