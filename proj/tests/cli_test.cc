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


#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string &args) {
    std::string cmd = std::string(SURFCORR_CLI) + " " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        throw std::runtime_error("popen failed");
    }
    CliRun run;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        run.output.append(buf, n);
    }
    int status = pclose(pipe);
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("surfcorr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) {
        fs::path path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }
    static std::string slurp(const fs::path &path) {
        std::ifstream in(path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    fs::path dir_;
};

size_t count_lines(const std::string &text, const std::string &prefix) {
    std::istringstream in(text);
    std::string line;
    size_t n = 0;
    while (std::getline(in, line)) {
        n += line.rfind(prefix, 0) == 0;
    }
    return n;
}

TEST_F(CliTest, MissingSubcommandIsConfigError) { EXPECT_EQ(run_cli("").exit_code, 1); }

TEST_F(CliTest, UnknownOptionIsConfigError) { EXPECT_EQ(run_cli("decode --bogus 1").exit_code, 1); }

TEST_F(CliTest, BadConfigIsConfigError) {
    auto path = write("bad.json", R"({"experiment": "code-capacity", "family": "type9", "d": [3], "p": [0.1]})");
    auto run = run_cli("sample " + path);
    EXPECT_EQ(run.exit_code, 1);
    EXPECT_NE(run.output.find("family"), std::string::npos);
    EXPECT_EQ(run_cli("sample " + (dir_ / "missing.json").string()).exit_code, 1);
}

TEST_F(CliTest, SampleWritesCsv) {
    auto out = (dir_ / "runs.csv").string();
    auto path = write("ok.json", R"({"experiment": "code-capacity", "family": "type1", "k": 2, "d": [3, 5],
                                     "p": [0.05, 0.1], "shots": 200, "seed": 3, "out": ")" +
                                     out + R"("})");
    auto run = run_cli("sample " + path);
    ASSERT_EQ(run.exit_code, 0) << run.output;
    std::string csv = slurp(out);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,k,d,rounds,p,p_cor,shots,failures,logical_rate,ci_low,ci_high,seed");
    EXPECT_EQ(count_lines(csv, "type1,2,"), 4u);
    auto again = run_cli("sample " + path);
    ASSERT_EQ(again.exit_code, 0);
    EXPECT_EQ(slurp(out), csv);
}

TEST_F(CliTest, DecodePrintsPairs) {
    auto path = write("chain.dem", "# chain\nerror(0.1) D0\nerror(0.1) D0 D1\nerror(0.1) D1 L0\n");
    auto run = run_cli("decode --dem " + path + " --syndrome 11");
    ASSERT_EQ(run.exit_code, 0) << run.output;
    EXPECT_NE(run.output.find("pairs: D0-D1"), std::string::npos) << run.output;
    EXPECT_NE(run.output.find("correction_mechanisms: 1"), std::string::npos);
    EXPECT_NE(run.output.find("logical_flip: L0=0 L1=0"), std::string::npos);

    auto single = run_cli("decode --dem " + path + " --syndrome 01");
    ASSERT_EQ(single.exit_code, 0) << single.output;
    EXPECT_NE(single.output.find("D1-boundary"), std::string::npos);
    EXPECT_NE(single.output.find("L0=1"), std::string::npos);
}

// A written model decodes exactly like the in-memory one: parallel mechanisms are not combined.
TEST_F(CliTest, DecodeWrittenModel) {
    auto dem = run_cli("dem --experiment code-capacity --family type2 --d 3 --p 0.1");
    ASSERT_EQ(dem.exit_code, 0);
    auto path = write("type2.dem", dem.output);
    auto run = run_cli("decode --dem " + path + " --syndrome 100100");
    ASSERT_EQ(run.exit_code, 0) << run.output;
    EXPECT_NE(run.output.find("pairs: D0-D3"), std::string::npos) << run.output;
    EXPECT_NE(run.output.find("total_weight: 2.19722"), std::string::npos) << run.output;
}

TEST_F(CliTest, DecodeUnreachableDefectIsInfeasible) {
    auto path = write("gap.dem", "error(0.1) D0\n");
    EXPECT_EQ(run_cli("decode --dem " + path + " --syndrome 01").exit_code, 2);
}

TEST_F(CliTest, DecodeRejectsMalformedInput) {
    auto three = write("three.dem", "error(0.1) D0 D1 D2\n");
    EXPECT_EQ(run_cli("decode --dem " + three + " --syndrome 111").exit_code, 1);
    auto garbage = write("garbage.dem", "oops D0\n");
    EXPECT_EQ(run_cli("decode --dem " + garbage + " --syndrome 1").exit_code, 1);
    auto ok = write("ok.dem", "error(0.1) D0\n");
    EXPECT_EQ(run_cli("decode --dem " + ok + " --syndrome 1x").exit_code, 1);
    EXPECT_EQ(run_cli("decode --dem " + ok + " --syndrome 1").exit_code, 0);
}

TEST_F(CliTest, ThresholdWithoutCrossingIsInfeasible) {
    std::string csv = "family,k,d,rounds,p,p_cor,shots,failures,logical_rate,ci_low,ci_high,seed\n";
    for (int d : {3, 5}) {
        for (int i = 0; i < 4; ++i) {
            double p = 0.01 * (i + 1);
            int failures = d == 3 ? 100 * (i + 1) : 10 * (i + 1);
            std::ostringstream row;
            row << "iid,0," << d << ",0," << p << ",0,10000," << failures << ",0,0,0,1\n";
            csv += row.str();
        }
    }
    auto path = write("flat.csv", csv);
    auto run = run_cli("threshold " + path);
    EXPECT_EQ(run.exit_code, 2) << run.output;
    auto bad = write("bad.csv", "family,k\n");
    EXPECT_EQ(run_cli("threshold " + bad).exit_code, 1);
}

TEST_F(CliTest, SymmetryCheck) {
    auto run = run_cli("symmetry-check --family type1 --d 4 --k 2");
    ASSERT_EQ(run.exit_code, 0) << run.output;
    EXPECT_NE(run.output.find("contains_logical: true"), std::string::npos) << run.output;
    auto odd = run_cli("symmetry-check --family type1 --d 5 --k 2");
    ASSERT_EQ(odd.exit_code, 0);
    EXPECT_NE(odd.output.find("contains_logical: false"), std::string::npos) << odd.output;
    EXPECT_EQ(run_cli("symmetry-check --family type1 --d 4").exit_code, 0);
    EXPECT_EQ(run_cli("symmetry-check --family type1 --d 4 --k 1").exit_code, 1);
}

TEST_F(CliTest, Decompose) {
    auto run = run_cli("decompose --family type2 --d 5");
    ASSERT_EQ(run.exit_code, 0) << run.output;
    EXPECT_NE(run.output.find("components: 2"), std::string::npos) << run.output;
    EXPECT_NE(run.output.find("disjoint_supports: true"), std::string::npos);
    auto t1 = run_cli("decompose --family type1 --k 2 --d 5");
    ASSERT_EQ(t1.exit_code, 0) << t1.output;
    EXPECT_NE(t1.output.find("components: 4"), std::string::npos) << t1.output;
}

TEST_F(CliTest, Dem) {
    auto run = run_cli("dem --experiment code-capacity --family type2 --d 3 --p 0.1");
    ASSERT_EQ(run.exit_code, 0) << run.output;
    EXPECT_EQ(count_lines(run.output, "error("), 16u);
    auto circuit = run_cli("dem --family type1 --d 3 --p 0.001 --p-cor 0.001");
    ASSERT_EQ(circuit.exit_code, 0) << circuit.output;
    EXPECT_NE(circuit.output.find("# X-detector graph"), std::string::npos);
    EXPECT_GT(count_lines(circuit.output, "error("), 0u);
    EXPECT_EQ(run_cli("dem --family type1 --d 3 --p 0.7").exit_code, 1);
}

TEST_F(CliTest, PlotWritesSvg) {
    std::string csv = "family,k,d,rounds,p,p_cor,shots,failures,logical_rate,ci_low,ci_high,seed\n"
                      "iid,0,3,0,0.05,0,100,5,0.05,0.02,0.1,1\n"
                      "iid,0,3,0,0.1,0,100,15,0.15,0.09,0.23,1\n";
    auto path = write("runs.csv", csv);
    auto out = dir_ / "plot.svg";
    auto run = run_cli("plot " + path + " --out " + out.string());
    ASSERT_EQ(run.exit_code, 0) << run.output;
    EXPECT_EQ(slurp(out).rfind("<svg", 0), 0u);
}

}  // namespace
