#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccuc/errors.hpp"
#include "ccuc/experiment.hpp"

namespace {

using namespace ccuc;
namespace fs = std::filesystem;

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.synth = {4, 4, 2, 2, 1};
  c.synth_seed = 3;
  c.n_grid = {20, 60};
  c.trials = 3;
  c.test_size = 500;
  c.seed = 77;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ExperimentConfig, ParsesKeysAndResolvesPaths) {
  const nlohmann::json doc = {
      {"instance", "inst.json"},
      {"distribution", "uniform:0.1"},
      {"N_grid", {10, 30}},
      {"trials", 4},
      {"test_size", 100},
      {"beta", 1e-3},
      {"seed", 5},
      {"mip_gap", 1e-3},
      {"solver", {{"mip_gap", 1e-5}, {"time_limit", 30}}},
      {"support", false},
      {"output", "out"},
      {"jobs", 2}};
  const ExperimentConfig c = experiment_config_from_json(doc, "/data/run");
  ASSERT_TRUE(c.instance.has_value());
  EXPECT_EQ(*c.instance, fs::path("/data/run/inst.json"));
  EXPECT_EQ(c.output, fs::path("/data/run/out"));
  EXPECT_EQ(c.n_grid, (std::vector<std::uint64_t>{10, 30}));
  EXPECT_EQ(c.trials, 4u);
  EXPECT_DOUBLE_EQ(c.solver.mip_gap, 1e-5);  // solver block wins over the top-level key
  EXPECT_EQ(c.solver.time_limit, 30.0);
  EXPECT_FALSE(c.support);
  EXPECT_EQ(c.jobs, 2u);
  const ExperimentConfig again = experiment_config_from_json(experiment_config_to_json(c));
  EXPECT_EQ(experiment_config_to_json(again), experiment_config_to_json(c));
}

TEST(ExperimentConfig, RejectsBadValues) {
  EXPECT_THROW(experiment_config_from_json(nlohmann::json::array()), DataError);
  EXPECT_THROW(experiment_config_from_json(nlohmann::json{{"trials", "many"}}), DataError);
  for (const nlohmann::json& bad :
       {nlohmann::json{{"trials", 0}}, nlohmann::json{{"N_grid", nlohmann::json::array()}},
        nlohmann::json{{"beta", 1.5}}, nlohmann::json{{"distribution", "weird:1"}},
        nlohmann::json{{"test_size", 0}}}) {
    EXPECT_THROW(experiment_config_from_json(bad).validate(), DataError) << bad.dump();
  }
}

TEST(ExperimentSeeds, DistinctPerTrialAndSize) {
  EXPECT_NE(trial_seed(1, 100, 1), trial_seed(1, 100, 2));
  EXPECT_NE(trial_seed(1, 100, 1), trial_seed(1, 400, 1));
  EXPECT_NE(trial_seed(1, 100, 1), trial_seed(2, 100, 1));
  EXPECT_NE(test_seed(1, 100), test_seed(1, 400));
  EXPECT_NE(test_seed(1, 100), trial_seed(1, 100, 0));
  EXPECT_EQ(trial_seed(9, 5, 3), trial_seed(9, 5, 3));
}

TEST(RunExperiment, DeterministicAndIndependentOfJobs) {
  const ExperimentConfig c = small_config();
  const UCInstance inst = experiment_instance(c);
  const ExperimentReport a = run_experiment(inst, c);
  ExperimentConfig parallel = c;
  parallel.jobs = 3;
  const ExperimentReport b = run_experiment(inst, parallel);
  ASSERT_EQ(a.rows.size(), 6u);
  ASSERT_EQ(b.rows.size(), 6u);
  for (std::size_t j = 0; j < a.rows.size(); ++j) {
    const ExperimentRow &x = a.rows[j], &y = b.rows[j];
    EXPECT_TRUE(x.ok) << x.message;
    EXPECT_EQ(x.n, y.n);
    EXPECT_EQ(x.trial, y.trial);
    EXPECT_EQ(x.seed, y.seed);
    EXPECT_EQ(x.objective, y.objective);
    EXPECT_EQ(x.epsilon_hat, y.epsilon_hat);
    EXPECT_EQ(x.support_size, y.support_size);
    EXPECT_EQ(x.training_violations, 0u);
    // |S| <= |S-bar| <= n_t
    EXPECT_TRUE(x.support_done);
    EXPECT_LE(x.support_size, x.candidate_size);
    EXPECT_LE(x.candidate_size, inst.horizon());
  }
  EXPECT_EQ(a.rows[0].trial, 1u);
  EXPECT_EQ(a.rows[0].seed, trial_seed(c.seed, 20, 1));
}

TEST(RunExperiment, ReportFilesAreDeterministic) {
  ExperimentConfig c = small_config();
  c.n_grid = {15};
  c.trials = 2;
  const UCInstance inst = experiment_instance(c);
  const fs::path d1 = fs::temp_directory_path() / "ccuc_exp_a";
  const fs::path d2 = fs::temp_directory_path() / "ccuc_exp_b";
  write_experiment_report(d1, c, run_experiment(inst, c));
  write_experiment_report(d2, c, run_experiment(inst, c));
  for (const char* f : {"rows.csv", "fig2.csv", "fig3.csv", "table2.csv", "summary.json"})
    EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
  EXPECT_TRUE(fs::exists(d1 / "timings.csv"));
  const auto summary = nlohmann::json::parse(slurp(d1 / "summary.json"));
  EXPECT_FALSE(summary["config"].contains("jobs"));
  EXPECT_EQ(summary["rows"], 2);
  EXPECT_EQ(summary["contingency_weights"].get<std::vector<double>>(), inst.contingencies.weights);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST(AggregateRows, RecomputesStatistics) {
  std::vector<ExperimentRow> rows;
  auto row = [](std::uint64_t n, std::size_t trial, bool ok, double obj, double eps) {
    ExperimentRow r;
    r.n = n;
    r.trial = trial;
    r.ok = ok;
    r.objective = obj;
    r.epsilon_hat = eps;
    r.support_done = ok;
    r.support_size = trial;
    r.candidate_size = trial + 2;
    r.nondegenerate = trial % 2 == 1;
    return r;
  };
  rows.push_back(row(10, 1, true, 100.0, 0.05));
  rows.push_back(row(10, 2, true, 110.0, 0.15));
  rows.push_back(row(10, 3, false, 0.0, 0.0));
  rows.push_back(row(10, 4, true, 90.0, 0.01));
  rows.push_back(row(20, 1, false, 0.0, 0.0));
  const std::vector<CurvePoint> curve{{10, 0.1, false}, {20, 0.05, false}};
  const auto agg = aggregate_rows(rows, curve);
  ASSERT_EQ(agg.size(), 2u);
  EXPECT_EQ(agg[0].trials_ok, 3u);
  EXPECT_DOUBLE_EQ(agg[0].objective_mean, 100.0);
  EXPECT_EQ(agg[0].objective_min, 90.0);
  EXPECT_EQ(agg[0].objective_max, 110.0);
  EXPECT_NEAR(agg[0].epsilon_mean, 0.07, 1e-15);
  EXPECT_EQ(agg[0].above_bound, 1u);
  EXPECT_EQ(agg[0].support_min, 1u);
  EXPECT_EQ(agg[0].support_max, 4u);
  EXPECT_EQ(agg[0].candidate_max, 6u);
  EXPECT_EQ(agg[0].nondegenerate, 1u);
  EXPECT_EQ(agg[1].trials_ok, 0u);
  EXPECT_EQ(agg[1].support_trials, 0u);
}

TEST(AggregateRows, MeanStaysWithinBand) {
  // Identical values whose floating sum does not divide back exactly.
  std::vector<ExperimentRow> rows;
  for (std::size_t t = 1; t <= 10; ++t) {
    ExperimentRow r;
    r.n = 7;
    r.trial = t;
    r.ok = true;
    r.objective = 0.1;
    r.epsilon_hat = 0.1;
    rows.push_back(r);
  }
  const auto agg = aggregate_rows(rows, {{7, 0.5, false}});
  EXPECT_LE(agg[0].objective_mean, agg[0].objective_max);
  EXPECT_GE(agg[0].objective_mean, agg[0].objective_min);
}

TEST(ExperimentConfig, ShippedConfigsLoad) {
  const ExperimentConfig desk = read_experiment_config(fs::path(CCUC_CONFIG_DIR) / "desk.json");
  EXPECT_EQ(desk.synth.generators, 10u);
  EXPECT_EQ(desk.synth.horizon, 24u);
  EXPECT_EQ(desk.n_grid, (std::vector<std::uint64_t>{100, 400, 1000}));
  EXPECT_EQ(desk.trials, 10u);
  EXPECT_EQ(desk.test_size, 10000u);
  const ExperimentConfig big =
      read_experiment_config(fs::path(CCUC_CONFIG_DIR) / "ieee118_shape.json");
  EXPECT_EQ(big.synth.generators, 54u);
  EXPECT_EQ(big.synth.loads, 99u);
  EXPECT_FALSE(big.support);
  ASSERT_TRUE(big.solver.time_limit.has_value());
}

}  // namespace
