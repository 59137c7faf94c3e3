#include <gtest/gtest.h>

#include <random>

#include "ccuc/errors.hpp"
#include "ccuc/risk.hpp"
#include "ccuc/sample_complexity.hpp"
#include "test_util.hpp"

namespace {

using namespace ccuc;

UCSolution solved(const UCInstance& inst, const ScenarioSet& scen) {
  const SolveResult r = solve_uc(inst, scen);
  EXPECT_TRUE(r.solved());
  return *r.solution;
}

// Independent re-check: smallest base/contingency supply against demand.
bool brute_violated(const UCInstance& inst, const UCSolution& s, const ScenarioSet& set,
                    std::size_t i) {
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    double need = 0.0;
    for (std::size_t j = 0; j < inst.forecasts.loads(); ++j)
      need += inst.forecasts.load(t, j) + set.load(i, t, j);
    for (std::size_t w = 0; w < inst.forecasts.winds(); ++w)
      need -= inst.forecasts.wind(t, w) + set.wind(i, t, w);
    for (std::size_t k = 0; k < inst.cases(); ++k) {
      double supply = 0.0;
      for (std::size_t g = 0; g < inst.generators(); ++g) supply += s.dispatch(t, k, g);
      if (supply < need - kViolationTol) return true;
    }
  }
  return false;
}

TEST(IsViolated, ZeroAndHugeErrors) {
  const UCInstance inst = synth_instance({4, 3, 1, 2, 1}, 3);
  const UCSolution sol = solved(inst, {});
  ScenarioSet zero(1, 3, 2, 1);
  EXPECT_FALSE(is_violated(inst, sol, zero.trajectory(0)).violated);
  ScenarioSet huge(1, 3, 2, 1);
  huge.load(0, 1, 0) = 1e6;
  const ViolationCheck c = is_violated(inst, sol, huge.trajectory(0));
  EXPECT_TRUE(c.violated);
  EXPECT_GT(c.shortfall, 9e5);
  EXPECT_THROW(is_violated(inst, sol, ScenarioSet(1, 2, 2, 1).trajectory(0)), DataError);
}

TEST(IsViolated, ToleranceBoundary) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const UCSolution sol = solved(inst, {});  // supplies exactly 50
  EXPECT_FALSE(is_violated(inst, sol, fixtures::net_error_set(inst, {{5e-7}}).trajectory(0)).violated);
  EXPECT_TRUE(is_violated(inst, sol, fixtures::net_error_set(inst, {{2e-6}}).trajectory(0)).violated);
}

TEST(EmpiricalViolation, MatchesBruteForceRecheck) {
  const UCInstance inst = synth_instance({5, 4, 2, 3, 2}, 21);
  const Distribution d = Distribution::parse("gaussian:0.05:0.5");
  const UCSolution sol = solved(inst, sample_scenarios(inst, 30, d, 1));
  const ScenarioSet test = sample_scenarios(inst, 100, d, 999);
  const ViolationReport rep = empirical_violation(inst, sol, test);
  std::size_t count = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const bool v = brute_violated(inst, sol, test, i);
    EXPECT_EQ(rep.per_scenario[i] != 0, v) << i;
    count += v;
  }
  EXPECT_EQ(rep.violated, count);
  EXPECT_EQ(rep.tested, 100u);
  EXPECT_DOUBLE_EQ(rep.epsilon_hat, count / 100.0);
}

TEST(EmpiricalViolation, CountsPlantedViolations) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const UCSolution sol = solved(inst, {});
  std::vector<std::vector<double>> errs(100, {-1.0});
  errs[10] = {3.0};
  errs[50] = {0.5};
  errs[99] = {20.0};
  const ViolationReport rep = empirical_violation(inst, sol, fixtures::net_error_set(inst, errs));
  EXPECT_EQ(rep.violated, 3u);
  EXPECT_DOUBLE_EQ(rep.epsilon_hat, 0.03);
  EXPECT_NEAR(rep.worst_shortfall, 20.0, 1e-6);
  EXPECT_THROW(empirical_violation(inst, sol, ScenarioSet{}), std::invalid_argument);
}

TEST(EmpiricalViolation, TrainingSetIsNeverViolated) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const UCInstance inst = synth_instance({5, 5, 2, 3, 1}, seed);
    const ScenarioSet train = sample_scenarios(inst, 60, Distribution::parse("gaussian:0.05:0.5"), seed);
    const UCSolution sol = solved(inst, train);
    EXPECT_EQ(empirical_violation(inst, sol, train).violated, 0u) << seed;
  }
}

TEST(Reduction, ReducedProblemHasSameOptimum) {
  SolverConfig tight;
  tight.mip_gap = 1e-9;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const UCInstance inst = synth_instance({4, 5, 2, 2, 1}, seed);
    const ScenarioSet scen = sample_scenarios(inst, 80, Distribution::parse("gaussian:0.05:0.5"), seed);
    const auto idx = reduce_scenarios(scen);
    const SolveResult full = solve_uc(inst, scen, tight);
    const SolveResult reduced = solve_uc(inst, scen.subset(idx), tight);
    ASSERT_TRUE(full.solved());
    ASSERT_TRUE(reduced.solved());
    EXPECT_TRUE(relative_close(full.objective, reduced.objective, 1e-6)) << seed;
  }
}

TEST(Support, SingleScenarioThatBinds) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const SupportReport rep = find_support_scenarios(inst, fixtures::net_error_set(inst, {{5.0}}));
  EXPECT_EQ(rep.support_indices, std::vector<std::size_t>{0});
  EXPECT_TRUE(rep.nondegenerate);
  EXPECT_NEAR(rep.base_objective, 15.0 + 55.0 * 2.0, 1e-6);
}

TEST(Support, NonBindingScenarioIsNotSupport) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const SupportReport rep = find_support_scenarios(inst, fixtures::net_error_set(inst, {{-5.0}}));
  EXPECT_TRUE(rep.support_indices.empty());
}

TEST(Support, OnlyTheWorstOfOneStep) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const ScenarioSet s = fixtures::net_error_set(inst, {{5.0}, {-2.0}, {7.0}});
  for (SupportMode mode : {SupportMode::kBruteForce, SupportMode::kCandidates}) {
    SupportOptions opt;
    opt.mode = mode;
    const SupportReport rep = find_support_scenarios(inst, s, opt);
    EXPECT_EQ(rep.support_indices, std::vector<std::size_t>{2});
    EXPECT_EQ(rep.candidate_indices, std::vector<std::size_t>{2});
  }
}

TEST(Support, BruteForceAgreesWithCandidates) {
  const UCInstance inst = synth_instance({4, 4, 1, 2, 1}, 17);
  const ScenarioSet s = sample_scenarios(inst, 20, Distribution::parse("gaussian:0.05:0.5"), 8);
  SupportOptions brute;
  brute.mode = SupportMode::kBruteForce;
  const SupportReport a = find_support_scenarios(inst, s, brute);
  SupportOptions cand;
  cand.jobs = 2;
  const SupportReport b = find_support_scenarios(inst, s, cand);
  EXPECT_FALSE(a.support_indices.empty());
  EXPECT_EQ(a.support_indices, b.support_indices);
  EXPECT_EQ(a.tested_indices.size(), 20u);
  EXPECT_EQ(b.tested_indices, b.candidate_indices);
  EXPECT_TRUE(relative_close(a.base_objective, b.base_objective, 1e-6));
  // |S| <= |S-bar| <= n_t and S is a subset of S-bar.
  EXPECT_LE(b.support_indices.size(), b.candidate_indices.size());
  EXPECT_LE(b.candidate_indices.size(), 4u);
  for (std::size_t i : b.support_indices)
    EXPECT_TRUE(std::ranges::binary_search(b.candidate_indices, i));
  if (b.nondegenerate) EXPECT_TRUE(relative_close(b.support_objective, b.base_objective, 1e-6));
}

TEST(Support, JsonUsesOneBasedIndices) {
  SupportReport rep;
  rep.support_indices = {0, 4};
  rep.candidate_indices = {0, 2, 4};
  const auto j = support_to_json(rep);
  EXPECT_EQ(j["support_indices"], nlohmann::json({1, 5}));
  EXPECT_EQ(j["candidate_indices"], nlohmann::json({1, 3, 5}));
  EXPECT_EQ(j["support_size"], 2);
}

TEST(TheoreticalCurve, KnownPointsAndShape) {
  const auto c = theoretical_curve(24, 1e-4, {100, 455, 1000, 4650});
  ASSERT_EQ(c.size(), 4u);
  EXPECT_LE(c[1].epsilon, 0.1);
  EXPECT_GT(c[1].epsilon, 0.099);
  EXPECT_LE(c[3].epsilon, 0.01);
  for (std::size_t j = 1; j < c.size(); ++j) EXPECT_LT(c[j].epsilon, c[j - 1].epsilon);
  const auto full = theoretical_curve(75168, 1e-4, {1000});
  EXPECT_TRUE(full[0].vacuous);
  EXPECT_EQ(full[0].epsilon, 1.0);
}

TEST(TheoreticalCurve, EmpiricalRateBelowBoundOnAverage) {
  // With n_t = 3, N = 200 the bound is far above any realised violation
  // frequency we should see; a cheap consistency check of the two sides.
  const UCInstance inst = synth_instance({4, 3, 1, 2, 1}, 4);
  const Distribution d = Distribution::parse("gaussian:0.05");
  const double bound = epsilon_bound(200, 1e-4, 3).epsilon;
  double total = 0.0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const UCSolution sol = solved(inst, sample_scenarios(inst, 200, d, s));
    total += empirical_violation(inst, sol, sample_scenarios(inst, 2000, d, 1000 + s)).epsilon_hat;
  }
  EXPECT_LT(total / 5.0, bound);
}

}  // namespace
