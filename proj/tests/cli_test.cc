// Runs the built command-line tool and inspects its exit codes and files.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run(const std::string &args) {
    std::string cmd = std::string(QCHD_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) {
        r.out += buf;
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<double>> csv_rows(const fs::path &p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qchd_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    fs::path dir_;
};

TEST_F(CliTest, depolarizing_curves) {
    CliResult r = run("curve --channel depolarizing --q 0.2,0.5,0.8 --points 20 --out " + dir_.string());
    ASSERT_EQ(r.exit_code, 0) << r.out;
    for (const char *q : {"0.2", "0.5", "0.8"}) {
        fs::path csv = dir_ / (std::string("depolarizing_q") + q + "_hoeffding.csv");
        ASSERT_TRUE(fs::exists(csv)) << csv;
        auto rows = csv_rows(csv);
        ASSERT_EQ(rows.size(), 20u);
        const double qv = std::stod(q), d = -(1.0 - qv) * std::log2(qv / (2.0 - qv));
        EXPECT_NEAR(rows.front()[0], 0.0, 1e-12);
        EXPECT_NEAR(rows.back()[0], d, 1e-6);
        // Symmetric pair: B(0) is the reverse divergence, which equals D.
        EXPECT_NEAR(rows.front()[1], d, 1e-6);
        EXPECT_NEAR(rows.back()[1], 0.0, 1e-6);
    }
    EXPECT_TRUE(fs::exists(dir_ / "depolarizing_hoeffding_summary.json"));
}

TEST_F(CliTest, single_point_and_determinism) {
    CliResult one = run("curve --channel depolarizing --q 0.5 --points 1 --out " + dir_.string());
    ASSERT_EQ(one.exit_code, 0) << one.out;
    EXPECT_EQ(csv_rows(dir_ / "depolarizing_q0.5_hoeffding.csv").size(), 1u);

    CliResult a = run("curve --channel amplitude-damping --gamma 0.3 --pairs reference --points 8 --out -");
    CliResult b = run("curve --channel amplitude-damping --gamma 0.3 --pairs reference --points 8 --out -");
    ASSERT_EQ(a.exit_code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, chernoff_kind) {
    CliResult r = run("curve --channel pauli --p 0.7,0.1,0.1,0.1 --kind chernoff --points 5 --out " + dir_.string());
    ASSERT_EQ(r.exit_code, 0) << r.out;
    bool found = false;
    for (const auto &e : fs::directory_iterator(dir_)) {
        if (e.path().extension() == ".csv") {
            found = true;
            EXPECT_EQ(slurp(e.path()).rfind("a,b,C,alpha_star\n", 0), 0u);
        }
    }
    EXPECT_TRUE(found);
}

TEST_F(CliTest, usage_errors) {
    EXPECT_NE(run("curve --channel depolarizing --q \"\" --out " + dir_.string()).exit_code, 0);
    EXPECT_NE(run("curve --channel depolarizing --q 1.5 --out " + dir_.string()).exit_code, 0);
    EXPECT_NE(run("curve --channel nonsense").exit_code, 0);
    EXPECT_NE(run("verify no-such-suite").exit_code, 0);
    EXPECT_NE(run("reproduce no-such-example").exit_code, 0);
}

TEST_F(CliTest, reproduce_harrow_examples) {
    for (const char *id : {"harrow-lambda", "harrow-bound", "harrow-adaptive"}) {
        CliResult r = run(std::string("reproduce ") + id);
        EXPECT_EQ(r.exit_code, 0) << r.out;
        EXPECT_NE(r.out.find("PASS"), std::string::npos) << id;
        EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    }
}

TEST_F(CliTest, file_channel_power) {
    fs::path f = dir_ / "ch.json";
    std::ofstream(f) << R"({"in_dim": 2, "out_dim": 2, "kraus": [[[0.8944271909999159, 0], [0, 0.8944271909999159]],)"
                        R"( [[0, 0.4472135954999579], [0.4472135954999579, 0]]]})";
    CliResult r = run("power --file " + f.string());
    EXPECT_EQ(r.exit_code, 0) << r.out;
    CliResult bad = run("power --file " + (dir_ / "missing.json").string());
    EXPECT_NE(bad.exit_code, 0);
    EXPECT_NE(bad.out.find("error"), std::string::npos) << bad.out;
}

}  // namespace
