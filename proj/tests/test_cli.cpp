#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "symhyp/cli.hpp"

using namespace symhyp;
using namespace symhyp::cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "symhyp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json drop_timing(json j) {
    j.erase("elapsed_seconds");
    return j;
}

}  // namespace

TEST(Cli, CountDistinct) {
    const auto r = run({"count", "--field", "5,1", "--k", "3", "--coeffs", "0,1", "--distinct"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("N_star"), 12);
    EXPECT_EQ(j.at("k"), 3);
    EXPECT_EQ(j.at("coeffs"), json({0, 1}));
}

TEST(Cli, CountAllMethodsAgree) {
    for (const char* method : {"multiset-orbit", "naive"}) {
        const auto r = run({"count", "--field", "5,1", "--k", "3", "--coeffs", "0,0,1", "--method", method});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(json::parse(r.out).at("N"), 25);
    }
}

TEST(Cli, VanderAndDeepHole) {
    auto r = run({"vander", "count", "--field", "5,1", "--k", "3", "--poly", "0,0,0,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out).at("N_star_Df"), 12);
    r = run({"vander", "count", "--field", "5,1", "--k", "3", "--poly", "0,0,0,1", "--subset", "1,2,3,4", "--method",
             "determinant"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out).at("N_star_Df"), 0);
    r = run({"rs", "deephole", "--field", "5,1", "--k", "3", "--poly", "0,0,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out).at("deep_hole").get<bool>());
}

TEST(Cli, VerifyThmMain) {
    const auto r = run({"verify", "thm-main", "--field", "5,1", "--k", "3", "--m-range", "1..2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("verdict"), "verified");
    EXPECT_NE(r.err.find("thm-main verified"), std::string::npos);
}

TEST(Cli, ReportsAreByteIdenticalApartFromTiming) {
    const std::vector<std::string> args{"verify", "deep-holes", "--field", "5,1", "--k", "3", "--seed", "4"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(drop_timing(json::parse(a.out)).dump(), drop_timing(json::parse(b.out)).dump());
}

TEST(Cli, OutFileAndCsv) {
    const std::string path = testing::TempDir() + "symhyp_report.csv";
    const auto r = run({"verify", "subset-sum", "--field", "5,1", "--k", "3", "--format", "csv", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("subset-sum verified"), std::string::npos);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str().rfind("experiment,p,m,", 0), 0u);
    std::remove(path.c_str());
}

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"count", "--field", "5,1", "--k", "3"}).code, 1);
    EXPECT_EQ(run({"count", "--field", "6,1", "--k", "3", "--coeffs", "1"}).code, 1);
    EXPECT_EQ(run({"count", "--field", "5,1", "--k", "3", "--coeffs", "1,7"}).code, 1);
    EXPECT_EQ(run({"verify", "thm-main", "--field", "5,1", "--k", "2"}).code, 1);
    EXPECT_EQ(run({"verify", "nope", "--field", "5,1", "--k", "3"}).code, 1);
    EXPECT_EQ(run({"verify", "thm-main", "--field", "5,1", "--k", "3", "--m-range", "1-2"}).code, 1);
    const auto budget = run({"count", "--field", "7,1", "--k", "4", "--coeffs", "0,1", "--method", "naive", "--budget", "10"});
    EXPECT_EQ(budget.code, 1);
    EXPECT_NE(budget.err.find("budget"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ViolationExitsTwo) {
    verify::ExperimentReport r;
    r.experiment_id = "thm-main";
    r.field = Field::make(5, 1).descriptor();
    r.violations.push_back({{"type", "bound-violated"}});
    r.verdict = verify::Verdict::Violated;
    std::ostringstream out, err;
    EXPECT_EQ(cli::detail::report(r, CommandConfig{}, out, err), 2);
    r.verdict = verify::Verdict::ScanComplete;
    EXPECT_EQ(cli::detail::report(r, CommandConfig{}, out, err), 0);
}

TEST(Cli, ConfigRoundTrip) {
    const std::vector<std::vector<std::string>> cases{
        {"count", "--field", "7,1", "--k", "4", "--coeffs", "1,2,3", "--distinct", "--subset", "1,2,3,4,5"},
        {"vander", "count", "--field", "2,3", "--k", "3", "--poly", "0,0,0,5", "--method", "determinant"},
        {"rs", "deephole", "--field", "3,2", "--k", "4", "--poly", "1,2"},
        {"verify", "subset-sum", "--field", "5,1", "--k", "3", "--a-km1", "2", "--a-k", "3", "--seed", "7",
         "--m-range", "1..2", "--threads", "2", "--format", "csv"},
        {"field", "--field", "2,4"},
    };
    for (auto args : cases) {
        args.insert(args.begin(), "symhyp");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = 0;
        const auto cfg = parse_args(static_cast<int>(argv.size()), argv.data(), out, err, code);
        ASSERT_TRUE(cfg) << err.str();
        const auto j = cfg->to_json();
        EXPECT_EQ(CommandConfig::from_json(j).to_json(), j);

        auto again = cfg->to_args();
        again.insert(again.begin(), "symhyp");
        std::vector<const char*> argv2;
        for (const auto& a : again) argv2.push_back(a.c_str());
        const auto cfg2 = parse_args(static_cast<int>(argv2.size()), argv2.data(), out, err, code);
        ASSERT_TRUE(cfg2) << err.str();
        EXPECT_EQ(cfg2->to_json(), j);
    }
}

TEST(Cli, ThreadsFromEnvironment) {
    EXPECT_EQ(resolve_threads(3), 3u);
    setenv("SYMHYP_THREADS", "2", 1);
    EXPECT_EQ(resolve_threads(0), 2u);
    unsetenv("SYMHYP_THREADS");
    EXPECT_EQ(resolve_threads(0), 1u);
}
