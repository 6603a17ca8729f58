#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ecpd/dp.hpp"

namespace {

using nlohmann::json;

struct CliRun {
    int exitCode = -1;
    std::string out;
};

// Runs the installed binary with the given arguments, capturing stdout.
CliRun runCli(const std::string& args) {
    const std::string cmd = std::string(ECPD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    CliRun run;
    if (pipe == nullptr) {
        return run;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        run.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    run.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::string tempPath(const std::string& name) {
    return std::string(::testing::TempDir()) + "/" + name;
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    ASSERT_TRUE(out.good());
    out << content;
}

TEST(CliTest, GenerateEmitsSchemaAndValues) {
    const CliRun run = runCli("generate --n 100 --seed 3 --format json");
    ASSERT_EQ(run.exitCode, 0);
    const json doc = json::parse(run.out);
    EXPECT_EQ(doc.at("schema"), "ecpd/1");
    EXPECT_EQ(doc.at("n"), 100);
    EXPECT_EQ(doc.at("tau"), 50);
    EXPECT_EQ(doc.at("values").size(), 100u);
    EXPECT_DOUBLE_EQ(doc.at("suggested_low").get<double>(), -6.0);
    EXPECT_DOUBLE_EQ(doc.at("suggested_high").get<double>(), 7.0);
}

TEST(CliTest, GenerateThenDetectRoundTrip) {
    const std::string series = tempPath("series_mean.csv");
    const CliRun gen =
        runCli("generate --n 1000 --type mean --seed 5 --out " + series);
    ASSERT_EQ(gen.exitCode, 0);

    const CliRun det =
        runCli("detect --input " + series + " --type mean --bounds -6 7");
    ASSERT_EQ(det.exitCode, 0);
    const json doc = json::parse(det.out);
    EXPECT_EQ(doc.at("schema"), "ecpd/1");
    EXPECT_EQ(doc.at("command"), "detect");
    const json& result = doc.at("result");
    EXPECT_TRUE(result.at("confidence_ok").get<bool>());
    const auto tauIndex = result.at("tau_index").get<std::size_t>();
    EXPECT_GE(tauIndex, 400u);
    EXPECT_LE(tauIndex, 600u);
    const json& diag = result.at("diagnostics");
    EXPECT_LE(diag.at("max_depth").get<int>(), 65);
    EXPECT_GT(diag.at("ops").at("total_mults").get<std::uint64_t>(), 0u);
}

TEST(CliTest, LowConfidenceExitCode) {
    const std::string series = tempPath("series_const.csv");
    std::string content;
    for (int i = 0; i < 100; ++i) {
        content += "0.5\n";
    }
    writeFile(series, content);
    const CliRun det =
        runCli("detect --input " + series + " --type mean --bounds 0 1");
    EXPECT_EQ(det.exitCode, 3);
}

TEST(CliTest, DepthOverflowExitCode) {
    const std::string series = tempPath("series_step.csv");
    std::string content;
    for (int i = 0; i < 100; ++i) {
        content += (i < 50) ? "0.0\n" : "1.0\n";
    }
    writeFile(series, content);
    const CliRun det = runCli("detect --input " + series +
                              " --type turning --bounds 0 1 --depth-budget 5");
    EXPECT_EQ(det.exitCode, 4);
}

TEST(CliTest, UsageErrorsExitTwo) {
    EXPECT_EQ(runCli("detect --no-such-flag").exitCode, 2);
    EXPECT_EQ(runCli("generate").exitCode, 2); // --n is required
    EXPECT_EQ(runCli("generate --n 100 --type bogus").exitCode, 2);

    const std::string series = tempPath("series_usage.csv");
    std::string content;
    for (int i = 0; i < 100; ++i) {
        content += (i < 50) ? "0.0\n" : "1.0\n";
    }
    writeFile(series, content);
    // Variance needs blocks of at least two samples.
    EXPECT_EQ(runCli("detect --input " + series +
                     " --type variance --block-size 1 --bounds 0 1")
                  .exitCode,
              2);
}

TEST(CliTest, IoErrorsExitFive) {
    EXPECT_EQ(runCli("detect --input /no/such/file.csv --bounds 0 1").exitCode, 5);

    const std::string bad = tempPath("series_bad.csv");
    writeFile(bad, "abc\ndef\n");
    EXPECT_EQ(runCli("detect --input " + bad + " --bounds 0 1").exitCode, 5);
}

TEST(CliTest, HelpExitsZero) {
    EXPECT_EQ(runCli("--help").exitCode, 0);
    EXPECT_EQ(runCli("detect --help").exitCode, 0);
}

TEST(CliTest, PlainDetectionReportsMargin) {
    const std::string series = tempPath("series_plain.csv");
    std::string content;
    for (int i = 0; i < 1000; ++i) {
        content += (i < 500) ? "0.0\n" : "1.0\n";
    }
    writeFile(series, content);
    const CliRun det = runCli("detect-plain --input " + series +
                              " --type mean --block-size 10 --bounds 0 1");
    ASSERT_EQ(det.exitCode, 0);
    const json doc = json::parse(det.out);
    EXPECT_EQ(doc.at("command"), "detect-plain");
    EXPECT_EQ(doc.at("result").at("tau_index"), 500);
    EXPECT_GT(doc.at("result").at("margin").get<double>(), 0.0);
}

TEST(CliTest, DpDetectionReportsCalibratedSigma) {
    const std::string series = tempPath("series_dp.csv");
    std::string content;
    for (int i = 0; i < 1000; ++i) {
        content += (i < 500) ? "0.0\n" : "1.0\n";
    }
    writeFile(series, content);
    const CliRun det = runCli("detect-dp --input " + series +
                              " --epsilon 25 --seed 9");
    ASSERT_EQ(det.exitCode, 0);
    const json doc = json::parse(det.out);
    EXPECT_EQ(doc.at("command"), "detect-dp");
    // Default delta is 1/n^2 = 1e-6 for n = 1000.
    const double sigma = doc.at("result").at("sigma").get<double>();
    EXPECT_DOUBLE_EQ(sigma, ecpd::dpSigma({25.0, 1e-6, 1.0}));
    EXPECT_NEAR(doc.at("result").at("epsilon_check").get<double>(), 25.0, 25.0 * 1e-9);
}

TEST(CliTest, ResolutionReportsTheComparatorBound) {
    const CliRun run = runCli("resolution");
    ASSERT_EQ(run.exitCode, 0);
    const json doc = json::parse(run.out);
    const double gamma = doc.at("gamma").get<double>();
    EXPECT_GT(gamma, 0.0);
    EXPECT_LE(gamma, 0.05);
    EXPECT_EQ(doc.at("mult_cost"), 36);
    EXPECT_EQ(doc.at("depth_cost"), 24);
}

TEST(CliTest, BenchEmitsOneRowPerGridPoint) {
    const CliRun run = runCli("bench --n-grid 1000 --seed 2");
    ASSERT_EQ(run.exitCode, 0);
    const json doc = json::parse(run.out);
    const json& rows = doc.at("rows");
    ASSERT_EQ(rows.size(), 1u);
    const json& row = rows.at(0);
    EXPECT_EQ(row.at("n"), 1000);
    EXPECT_LE(row.at("max_depth").get<int>(), 65);
    EXPECT_EQ(row.at("tau_index"), row.at("mirror_tau_index"));
    EXPECT_TRUE(row.at("confidence_ok").get<bool>());
    EXPECT_GT(row.at("ops").at("total_mults").get<std::uint64_t>(), 0u);
}

TEST(CliTest, CompareSweepsTheNoiseBaseline) {
    const std::string svg = tempPath("compare.svg");
    const CliRun run = runCli("compare --n 1000 --seeds 2 --epsilons 1 25 --svg " + svg);
    ASSERT_EQ(run.exitCode, 0);
    const json doc = json::parse(run.out);
    EXPECT_EQ(doc.at("command"), "compare");
    EXPECT_EQ(doc.at("encrypted").at("runs"), 2);
    EXPECT_GE(doc.at("encrypted").at("mean_rel_error").get<double>(), 0.0);
    const json& baseline = doc.at("noise_baseline");
    ASSERT_EQ(baseline.size(), 2u);
    EXPECT_DOUBLE_EQ(baseline.at(0).at("epsilon").get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(baseline.at(1).at("epsilon").get<double>(), 25.0);

    std::ifstream in(svg);
    ASSERT_TRUE(in.good());
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first.rfind("<svg", 0), 0u);
}

} // namespace
