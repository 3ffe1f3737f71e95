#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "degroot/error.hpp"
#include "degroot/io.hpp"
#include "support/oracles.hpp"

namespace degroot::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("degroot_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_topology_file(dir_ / "swap.json", testing::two_swap());
    write_topology_file(dir_ / "c3.json", testing::directed_cycle(3));
    write_topology_file(dir_ / "split.json",
                        testing::uniform_topology(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}));
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunConfig config_for(const std::string& topology) {
    RunConfig config;
    config.topology_path = dir_ / topology;
    return config;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST(Parsers, MiniLanguages) {
  const auto g = parse_generator("6,2,7,sc");
  EXPECT_EQ(g.n, 6u);
  EXPECT_EQ(g.out_degree, 2u);
  EXPECT_EQ(g.seed, 7u);
  EXPECT_TRUE(g.strongly_connected);
  EXPECT_FALSE(parse_generator("6,2,7").strongly_connected);
  EXPECT_THROW(parse_generator("6,2"), Error);
  EXPECT_THROW(parse_generator("6,x,1"), Error);

  EXPECT_EQ(parse_rebels("all", 3), AgentTypes::all_rebels(3));
  EXPECT_EQ(parse_rebels("none", 3), AgentTypes::all_conformists(3));
  EXPECT_EQ(parse_rebels("0,2", 3).rebel_indices(), (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(parse_rebels("3", 3), Error);

  EXPECT_TRUE(parse_lambda("0.25", 4).is_uniform());
  EXPECT_FALSE(parse_lambda("0.1,0.2", 2).is_uniform());
  EXPECT_THROW(parse_lambda("0.1,0.2", 3), Error);
  EXPECT_THROW(parse_lambda("1.5", 3), Error);

  EXPECT_EQ(parse_x0("ones", 2), (std::vector<double>{1, 1}));
  EXPECT_EQ(parse_x0("rand:4", 5), parse_x0("rand:4", 5));
  EXPECT_EQ(parse_x0("0.1,0.9", 2), (std::vector<double>{0.1, 0.9}));
  EXPECT_THROW(parse_x0("0.1", 2), Error);
}

TEST_F(CliTest, AnalyzeTwoSwapDivergent) {
  auto config = config_for("swap.json");
  config.rebels = "all";
  config.lambda = "0";
  ASSERT_EQ(cmd_analyze(config, out_, err_), kOk) << err_.str();
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_EQ(doc["structure"]["period"], 2);
  EXPECT_EQ(doc["spectral"]["has_minus_one"], true);
  EXPECT_EQ(doc["prediction"]["verdict"], "Divergent");
}

TEST_F(CliTest, AnalyzeThreeCycleRate) {
  auto config = config_for("c3.json");
  config.rebels = "all";
  config.lambda = "0.5";
  config.out_dir = dir_ / "report";
  ASSERT_EQ(cmd_analyze(config, out_, err_), kOk) << err_.str();
  const auto doc = nlohmann::json::parse(slurp(dir_ / "report" / "report.json"));
  EXPECT_EQ(doc["prediction"]["verdict"], "ConvergesToMean");
  EXPECT_NEAR(doc["predicted_rate"].get<double>(), 0.8660254037844386, 1e-12);
}

TEST_F(CliTest, AnalyzeSplitTopologyReportsClosedGroups) {
  auto config = config_for("split.json");
  ASSERT_EQ(cmd_analyze(config, out_, err_), kOk) << err_.str();
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_TRUE(doc["prediction"].is_null());
  ASSERT_EQ(doc["groups"].size(), 2u);
  EXPECT_EQ(doc["groups"][1]["nodes"], nlohmann::json::array({2, 3}));
  EXPECT_EQ(doc["groups"][1]["structure"]["strongly_connected"], true);
}

TEST_F(CliTest, AnalyzeErrorsMapToExitCodes) {
  std::ofstream(dir_ / "bad.json") << R"({"n": 2, "edges": [[0, 1, 0.6], [1, 0, 1]]})";
  EXPECT_EQ(cmd_analyze(config_for("bad.json"), out_, err_), kInvalidInput);
  EXPECT_NE(err_.str().find("RowSumViolation"), std::string::npos);

  auto config = config_for("c3.json");
  config.lambda = "0.1,0.2,0.3";
  EXPECT_EQ(cmd_analyze(config, out_, err_), kNonUniformLambda);

  RunConfig none;
  EXPECT_EQ(cmd_analyze(none, out_, err_), kInvalidInput);
}

TEST_F(CliTest, SimulateExitCodes) {
  auto converge = config_for("c3.json");
  converge.rebels = "all";
  converge.lambda = "0.5";
  converge.x0 = "ones";
  converge.out_dir = dir_ / "c3";
  ASSERT_EQ(cmd_simulate(converge, out_, err_), kOk) << err_.str();
  const auto verdict = nlohmann::json::parse(slurp(dir_ / "c3" / "verdict.json"));
  EXPECT_EQ(verdict["verdict"]["kind"], "ConvergedTo");
  EXPECT_LT(verdict["distance_to_mean"].get<double>(), 1e-9);
  EXPECT_EQ(slurp(dir_ / "c3" / "trajectory.csv").substr(0, 14), "t,x_0,x_1,x_2\n");

  auto oscillate = config_for("swap.json");
  oscillate.rebels = "all";
  oscillate.lambda = "0";
  oscillate.x0 = "ones";
  oscillate.out_dir = dir_ / "swap";
  EXPECT_EQ(cmd_simulate(oscillate, out_, err_), kOscillation);

  auto stuck = config_for("c3.json");
  stuck.lambda = "0";
  stuck.x0 = "1,0,0.3";
  stuck.max_iter = 100;
  stuck.out_dir = dir_ / "stuck";
  EXPECT_EQ(cmd_simulate(stuck, out_, err_), kMaxIterations);

  auto frozen = config_for("c3.json");
  frozen.lambda = "1";
  frozen.x0 = "0.2,0.4,0.9";
  frozen.out_dir = dir_ / "frozen";
  ASSERT_EQ(cmd_simulate(frozen, out_, err_), kOk);
  const auto f = nlohmann::json::parse(slurp(dir_ / "frozen" / "verdict.json"));
  EXPECT_EQ(f["frozen"], true);
  EXPECT_EQ(f["prediction"]["verdict"], "Frozen");
  EXPECT_EQ(f["final_state"], nlohmann::json::array({0.2, 0.4, 0.9}));

  auto bad = config_for("c3.json");
  bad.x0 = "0.5,2,0";
  bad.out_dir = dir_ / "bad";
  EXPECT_EQ(cmd_simulate(bad, out_, err_), kInvalidInput);
}

TEST_F(CliTest, VerifyRandomSuiteHasNoFailures) {
  RunConfig config;
  config.trials = 60;
  config.seed = 11;
  ASSERT_EQ(cmd_verify(config, out_, err_), kOk) << err_.str();
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_EQ(doc["failures"], 0);
  EXPECT_EQ(doc["instances"].size(), 60u);
  for (std::size_t i = 0; i < 60; ++i) EXPECT_EQ(doc["instances"][i]["trial"], i);
}

TEST_F(CliTest, VerifyFixedDivergentInstance) {
  auto config = config_for("swap.json");
  config.rebels = "all";
  config.lambda = "0";
  config.x0 = "ones";
  config.trials = 1;
  ASSERT_EQ(cmd_verify(config, out_, err_), kOk) << err_.str();
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_EQ(doc["table"]["Divergent"]["PeriodTwoOscillation"], 1);
}

TEST_F(CliTest, VerifyRejectsZeroTrials) {
  RunConfig config;
  config.trials = 0;
  EXPECT_EQ(cmd_verify(config, out_, err_), kInvalidInput);
}

TEST_F(CliTest, VerifyIsReproducible) {
  RunConfig config;
  config.trials = 20;
  config.seed = 5;
  std::ostringstream a, b;
  ASSERT_EQ(cmd_verify(config, a, err_), kOk);
  ASSERT_EQ(cmd_verify(config, b, err_), kOk);
  EXPECT_EQ(a.str(), b.str());
}

TEST_F(CliTest, GenerateIsDeterministic) {
  RunConfig config;
  config.generate = "6,2,7,sc";
  std::ostringstream a, b;
  ASSERT_EQ(cmd_generate(config, a, err_), kOk);
  ASSERT_EQ(cmd_generate(config, b, err_), kOk);
  EXPECT_EQ(a.str(), b.str());

  config.generate = "2,1,3";
  std::ostringstream pair;
  ASSERT_EQ(cmd_generate(config, pair, err_), kOk);
  std::istringstream in(pair.str());
  EXPECT_EQ(read_topology(in).weights(), testing::two_swap().weights());

  config.generate = "5,0,1";
  EXPECT_EQ(cmd_generate(config, out_, err_), kInvalidInput);
  EXPECT_NE(err_.str().find("InvalidDegree"), std::string::npos);
}

}  // namespace
}  // namespace degroot::cli
