#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sparsestream/cli.hpp"

namespace sparsestream::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sparsestream");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("sparsestream_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, GenWritesStreamAndTruth) {
  const CliRun r = run_cli({"gen", "--shape", "spider-p4", "--r", "2", "--seed", "1", "--out", path("s.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto truth = nlohmann::json::parse(slurp(path("s.txt.truth.json")));
  EXPECT_EQ(truth["gamma"], 3);
  EXPECT_EQ(truth["n"], 10);
  EXPECT_EQ(slurp(path("s.txt")).rfind("# n=10 model=edge", 0), 0u);
}

TEST_F(CliTest, GenPathTruth) {
  ASSERT_EQ(run_cli({"gen", "--shape", "path", "--n", "6", "--out", path("p.txt")}).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(path("p.txt.truth.json")))["beta"], 3);
}

TEST_F(CliTest, GenRejectsInvalidSpec) {
  const CliRun r = run_cli({"gen", "--shape", "random-tree", "--n", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("InvalidShapeParams"), std::string::npos);
  EXPECT_EQ(run_cli({"gen", "--shape", "nonsense", "--n", "5"}).code, 1);
  EXPECT_EQ(run_cli({"gen", "--bogus-flag"}).code, 1);
}

TEST_F(CliTest, EstimatePhiOnPairs) {
  ASSERT_EQ(run_cli({"gen", "--shape", "path", "--n", "10", "--r", "5", "--out", path("p2.txt")}).code, 0);
  const CliRun r = run_cli({"estimate", "--alg", "phi-1p", "--stream", path("p2.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["point"], 5.0);
  EXPECT_EQ(j["parameter"], "phi");
  EXPECT_EQ(j["passes"], 1);
}

TEST_F(CliTest, EstimateRejectsIncompatibleModel) {
  ASSERT_EQ(run_cli({"gen", "--shape", "random-tree", "--n", "20", "--out", path("t.txt")}).code, 0);
  const CliRun r = run_cli({"estimate", "--alg", "cw-vertex", "--stream", path("t.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("IncompatibleStreamModel"), std::string::npos);
  EXPECT_EQ(run_cli({"estimate", "--alg", "nope", "--stream", path("t.txt")}).code, 1);
  EXPECT_EQ(run_cli({"estimate", "--alg", "beta-1p", "--stream", path("missing.txt")}).code, 1);
}

TEST_F(CliTest, EstimateRejectsCyclesForForestAlgorithms) {
  std::ofstream(path("c.txt")) << "# n=3 model=edge\n+ 1 2\n+ 2 3\n+ 1 3\n";
  const CliRun r = run_cli({"estimate", "--alg", "gamma-2p", "--stream", path("c.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("NotAForest"), std::string::npos);
  EXPECT_EQ(run_cli({"estimate", "--alg", "cw-base", "--stream", path("c.txt")}).code, 0);
}

TEST_F(CliTest, ExactPrintsGroundTruth) {
  std::ofstream(path("x.txt")) << "# n=4 model=edge\n+ 1 2\n+ 2 3\n+ 3 4\n";
  const CliRun r = run_cli({"exact", "--stream", path("x.txt")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["phi"], 2);
  EXPECT_EQ(j["lambda"], "5/3");
}

TEST_F(CliTest, OutputIsByteIdenticalPerSeed) {
  const std::vector<std::string> args{"eval", "--alg", "beta-2p", "--shape", "random-tree", "--n", "300",
                                      "--trials", "6", "--seed", "4", "--eps", "0.3"};
  setenv("SPARSESTREAM_THREADS", "1", 1);
  const CliRun a = run_cli(args);
  setenv("SPARSESTREAM_THREADS", "3", 1);
  const CliRun b = run_cli(args);
  unsetenv("SPARSESTREAM_THREADS");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# schema=sparsestream.eval/1\n", 0), 0u);
  EXPECT_NE(a.out.find("# summary\n"), std::string::npos);
}

TEST_F(CliTest, EvalRejectsZeroTrials) {
  const CliRun r = run_cli({"eval", "--alg", "cw-base", "--shape", "random-tree", "--n", "50", "--trials", "0"});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, EvalOverAllTreesWithExactCounts) {
  EvalConfig cfg;
  cfg.algorithm = Algorithm::Beta2p;
  cfg.gen.shape = "all-trees";
  cfg.gen.n = 7;
  const EvalResult res = run_eval(cfg);
  EXPECT_EQ(res.summary.trials, 16807u);
  EXPECT_LE(res.summary.max_ratio, 4.0 / 3.0 + 1e-12);
  EXPECT_EQ(res.summary.success_rate, 1.0);
}

TEST_F(CliTest, EvalCaroWeiOnSparseGraphs) {
  const CliRun r = run_cli({"eval", "--alg", "cw-base", "--shape", "random-graph", "--n", "3000", "--avg-degree",
                         "2", "--max-degree", "5", "--trials", "30", "--out", path("e.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("e.csv"));
  const auto pos = csv.rfind('\n', csv.size() - 2);
  std::istringstream last(csv.substr(pos + 1));
  std::string trials, rate;
  std::getline(last, trials, ',');
  std::getline(last, rate, ',');
  EXPECT_EQ(trials, "30");
  EXPECT_GE(std::stod(rate), 2.0 / 3.0 - 3 * std::sqrt(2.0 / 9.0 / 30));
}

TEST(CliMapping, ExitCodes) {
  EXPECT_EQ(exit_code_for(ErrorKind::AllInstancesAborted), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::CounterOverflowAbort), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::MalformedLine), 1);
  EXPECT_EQ(exit_code_for(ErrorKind::IncompatibleStreamModel), 1);
}

TEST(CliMapping, AlgorithmNamesRoundTrip) {
  for (auto a : {Algorithm::CwBase, Algorithm::CwOnline, Algorithm::CwUnbounded, Algorithm::CwVertex,
                 Algorithm::Beta1p, Algorithm::Beta2p, Algorithm::Gamma1p, Algorithm::Gamma2p, Algorithm::Phi1p,
                 Algorithm::Phi2p})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
}

TEST(CliMapping, TrialSuccessFollowsFactorRelations) {
  EstimateReport r;
  r.epsilon = 0.2;
  r.point = 10;
  EXPECT_TRUE(trial_success(Algorithm::Beta2p, r, 13.0));
  EXPECT_FALSE(trial_success(Algorithm::Beta2p, r, 17.0));
  EXPECT_TRUE(trial_success(Algorithm::Gamma2p, r, 5.0));
  EXPECT_FALSE(trial_success(Algorithm::Gamma2p, r, 4.0));
  EXPECT_TRUE(trial_success(Algorithm::CwBase, r, 7.0));
  r.add_flag("degraded");
  EXPECT_FALSE(trial_success(Algorithm::CwBase, r, 10.0));
}

}  // namespace
}  // namespace sparsestream::cli
