#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(CCUC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  CliRun r;
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "ccuc_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const CliRun g = cli("generate --generators 4 --horizon 4 --outages 2 --loads 2 --winds 1 --seed 3 --out " +
                      (dir_ / "inst.json").string());
    ASSERT_EQ(g.code, 0);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string inst() { return (dir_ / "inst.json").string(); }
  static inline fs::path dir_;
};

TEST_F(Cli, SampleSizeAndEpsilonBound) {
  EXPECT_EQ(cli("sample-size --epsilon 0.1 --beta 1e-4 --h 24").out, "455\n");
  EXPECT_EQ(cli("sample-size --epsilon 0.01 --beta 1e-4 --h 75168").out, "7618678\n");
  const CliRun b = cli("epsilon-bound --n 455 --beta 1e-4 --h 24");
  EXPECT_EQ(b.code, 0);
  EXPECT_LE(std::stod(b.out), 0.1);
  EXPECT_EQ(cli("epsilon-bound --n 10 --beta 1e-4 --h 24").out, "1\n");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("sample-size --epsilon 0.1").code, 1);
  EXPECT_EQ(cli("sample-size --epsilon 0 --beta 0.1 --h 1").code, 1);
  EXPECT_EQ(cli("solve --instance /nonexistent.json").code, 3);
  EXPECT_EQ(cli("solve --instance " + inst() + " --count 5 --distribution nonsense:1").code, 3);
  // Errors far beyond the fleet's capacity make the model infeasible.
  EXPECT_EQ(cli("solve --instance " + inst() + " --count 5 --distribution gaussian:50").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST_F(Cli, SolveFullAndReducedAgree) {
  const std::string scen = (dir_ / "scen.csv").string();
  ASSERT_EQ(cli("sample --instance " + inst() + " --count 40 --seed 9 --out " + scen).code, 0);
  const CliRun full = cli("solve --mip-gap 1e-9 --instance " + inst() + " --scenarios " + scen);
  const CliRun red = cli("solve --mip-gap 1e-9 --instance " + inst() + " --scenarios " + scen + " --reduce");
  ASSERT_EQ(full.code, 0);
  ASSERT_EQ(red.code, 0);
  const auto a = nlohmann::json::parse(full.out);
  const auto b = nlohmann::json::parse(red.out);
  EXPECT_EQ(a["status"], "optimal");
  EXPECT_EQ(a["scenarios_used"], 40);
  EXPECT_EQ(b["scenarios_used"], b["candidate_size"]);
  EXPECT_LE(b["candidate_size"].get<int>(), 4);
  EXPECT_NEAR(a["objective"].get<double>(), b["objective"].get<double>(),
              1e-6 * std::abs(a["objective"].get<double>()));
  EXPECT_EQ(a["training_violations"], 0);
  EXPECT_EQ(b["training_violations"], 0);

  const CliRun reduce = cli("reduce --scenarios " + scen);
  ASSERT_EQ(reduce.code, 0);
  EXPECT_EQ(nlohmann::json::parse(reduce.out)["candidate_size"], b["candidate_size"]);
}

TEST_F(Cli, ValidateOnTrainingSetAndFreshDraws) {
  const std::string scen = (dir_ / "train.csv").string();
  const std::string sol = (dir_ / "sol.json").string();
  ASSERT_EQ(cli("sample --instance " + inst() + " --count 30 --seed 4 --out " + scen).code, 0);
  ASSERT_EQ(cli("solve --instance " + inst() + " --scenarios " + scen + " --solution " + sol).code, 0);
  const CliRun train = cli("validate --instance " + inst() + " --solution " + sol + " --scenarios " + scen);
  ASSERT_EQ(train.code, 0);
  const auto t = nlohmann::json::parse(train.out);
  EXPECT_EQ(t["violated"], 0);
  EXPECT_EQ(t["tested"], 30);
  const CliRun fresh = cli("validate --instance " + inst() + " --solution " + sol + " --count 2000 --seed 77");
  ASSERT_EQ(fresh.code, 0);
  const auto f = nlohmann::json::parse(fresh.out);
  EXPECT_EQ(f["tested"], 2000);
  EXPECT_GE(f["epsilon_hat"].get<double>(), 0.0);
  EXPECT_LT(f["epsilon_hat"].get<double>(), 1.0);
}

TEST_F(Cli, SupportAndMpsExport) {
  const CliRun s = cli("support --instance " + inst() + " --count 15 --seed 2");
  ASSERT_EQ(s.code, 0);
  const auto j = nlohmann::json::parse(s.out);
  EXPECT_LE(j["support_size"].get<int>(), j["candidate_size"].get<int>());
  EXPECT_EQ(j["mode"], "candidates");

  const fs::path mps = dir_ / "model.mps";
  ASSERT_EQ(cli("solve --instance " + inst() + " --export-mps " + mps.string() + " --mps-format fixed").code, 0);
  const std::string text = slurp(mps);
  EXPECT_EQ(text.rfind("NAME", 0), 0u);
  EXPECT_NE(text.find("ENDATA"), std::string::npos);
}

TEST_F(Cli, ExperimentIsDeterministic) {
  const fs::path cfg = dir_ / "exp.json";
  std::ofstream(cfg) << R"({"instance": "inst.json", "N_grid": [10], "trials": 2,
                            "test_size": 200, "seed": 5, "output": "exp-out"})";
  ASSERT_EQ(cli("experiment --quiet --config " + cfg.string()).code, 0);
  const std::string first = slurp(dir_ / "exp-out" / "rows.csv");
  const std::string other = (dir_ / "exp-out-2").string();
  ASSERT_EQ(cli("experiment --quiet --jobs 2 --config " + cfg.string() + " --out " + other).code, 0);
  EXPECT_EQ(first, slurp(fs::path(other) / "rows.csv"));
  EXPECT_EQ(slurp(dir_ / "exp-out" / "summary.json"), slurp(fs::path(other) / "summary.json"));
  EXPECT_NE(first.find("N,trial,seed"), std::string::npos);
}

}  // namespace
