#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

using namespace cryoctl;
using cryoctl::testing::data_path;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return data_path("scenarios/" + name + ".json"); }

}  // namespace

TEST(Cli, NoArgumentsIsUsageError) {
  const Outcome r = run({});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("estimate"), std::string::npos);
}

TEST(Cli, HelpSucceeds) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST(Cli, UnknownSubcommandAndFlag) {
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"estimate", "--bogus"}).code, cli::kExitValidation);
}

TEST(Cli, EstimateJson) {
  const Outcome r = run({"estimate", "--scenario", scenario("paper-defaults")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["total"]["power_w"].get<double>(), 1.776e-4, 1e-6);
  EXPECT_FALSE(j["include_data_input"].get<bool>());
}

TEST(Cli, EstimateIncludesDataInput) {
  const Outcome a = run({"estimate"});
  const Outcome b = run({"estimate", "--include-data-input"});
  EXPECT_GT(json::parse(b.out)["managing"]["power_w"].get<double>(),
            json::parse(a.out)["managing"]["power_w"].get<double>());
}

TEST(Cli, EstimateWithBudgetOverride) {
  const Outcome r = run({"estimate", "--digital-budget", data_path("digital_budget.json"), "--format", "csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind(std::string(kReportCsvHeader) + "\n", 0), 0u);
}

TEST(Cli, EstimateToFile) {
  const auto path = std::filesystem::temp_directory_path() / "cryoctl_cli_estimate.json";
  const Outcome r = run({"estimate", "--out", path.string()});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_TRUE(json::parse(in).is_object());
  std::filesystem::remove(path);
}

TEST(Cli, MissingScenarioIsValidationError) {
  const Outcome r = run({"estimate", "--scenario", "/nonexistent/s.json"});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, BadFormat) { EXPECT_EQ(run({"estimate", "--format", "xml"}).code, cli::kExitValidation); }

TEST(Cli, Capacity) {
  EXPECT_EQ(run({"capacity", "--budget", "1e-3"}).out, "5\n");
  EXPECT_EQ(run({"capacity", "--budget", "1e-3", "--scenario", scenario("14nm-sram-10mv")}).out, "1431\n");
  EXPECT_EQ(run({"capacity", "--budget", "1e-3", "--per-qubit", "7e-7"}).out, "1428\n");
  EXPECT_EQ(run({"capacity"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"capacity", "--budget", "-1"}).code, cli::kExitValidation);
}

TEST(Cli, ConflictingFlags) {
  EXPECT_EQ(run({"capacity", "--budget", "1", "--per-qubit", "1e-6", "--scenario", scenario("paper-defaults")}).code,
            cli::kExitValidation);
  EXPECT_EQ(run({"sweep", "--param", "v_dd", "--points", "0.1", "--range", "0.1:1:3"}).code, cli::kExitValidation);
}

TEST(Cli, SystemSweepCsv) {
  const Outcome r = run({"sweep", "--param", "v_dd", "--range", "0.1:1:10"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kSweepCsvHeader);
  int rows = 0;
  for (std::string l; std::getline(in, l);) ++rows;
  EXPECT_EQ(rows, 10);
}

TEST(Cli, SweepNeedsValues) { EXPECT_EQ(run({"sweep", "--param", "n_bias"}).code, cli::kExitValidation); }

TEST(Cli, DacSweep) {
  const Outcome r = run({"sweep", "--unit", "dac", "--conditions", "rf", "--n-min", "4", "--n-max", "6"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind(std::string(kDacCsvHeader) + "\n", 0), 0u);
  EXPECT_EQ(run({"sweep", "--unit", "dac", "--conditions", "cold"}).code, cli::kExitValidation);
}

TEST(Cli, Bounds) {
  const Outcome r = run({"bounds", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out).size(), 7u);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"estimate", "--scenario", scenario("14nm-sram-10mv")},
        std::vector<std::string>{"sweep", "--param", "n_bias", "--points", "4,8,12,16", "--threads", "3"},
        std::vector<std::string>{"simulate", "--stimulus", data_path("stimulus/ramp.txt"), "--until", "2us",
                                 "--trace", "-"}})
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, SimulateSummaryAndTrace) {
  const Outcome r = run({"simulate", "--stimulus", data_path("stimulus/rf-playback.txt"), "--until", "5us", "--format",
                     "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["rf_samples"].get<int>(), 32);
  EXPECT_EQ(j["words_written"].get<int>(), 32);

  const Outcome t = run({"simulate", "--stimulus", data_path("stimulus/bias-refresh.txt"), "--until", "2us", "--trace",
                     "-", "--no-clock-events"});
  ASSERT_EQ(t.code, cli::kExitOk) << t.err;
  EXPECT_EQ(t.out.rfind("t_ns,signal,value\n", 0), 0u);
  EXPECT_EQ(t.out.find("clk_rf"), std::string::npos);
}

TEST(Cli, SimulateVcd) {
  const auto path = std::filesystem::temp_directory_path() / "cryoctl_cli.vcd";
  const Outcome r = run({"simulate", "--until", "1us", "--vcd", path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("$timescale 1 fs $end"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, SimulateErrors) {
  EXPECT_EQ(run({"simulate", "--until", "soon"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"simulate", "--stimulus", "/nonexistent/stim.txt"}).code, cli::kExitValidation);
  const auto path = std::filesystem::temp_directory_path() / "cryoctl_bad_stim.txt";
  std::ofstream(path) << "0 write-bias 0 1\n0 write-bias 42 1\n";
  const Outcome r = run({"simulate", "--stimulus", path.string()});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}
