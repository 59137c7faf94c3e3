#include <gtest/gtest.h>

#include <cstdlib>

#include "ccuc/errors.hpp"
#include "ccuc/feasibility.hpp"
#include "ccuc/formulation.hpp"
#include "ccuc/solver.hpp"
#include "test_util.hpp"

namespace {

using namespace ccuc;

SolverConfig tight() {
  SolverConfig c;
  c.mip_gap = 1e-9;
  return c;
}

TEST(Solve, SingleUnitClosedForm) {
  // Off initially, must start and cover 50 MW: c_z + c_u + 50 * c_g.
  const UCInstance inst = fixtures::single_unit(50.0);
  const SolveResult r = solve_uc(inst, {});
  ASSERT_TRUE(r.solved());
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 10.0 + 5.0 + 50.0 * 2.0, 1e-6);
  EXPECT_EQ(r.solution->commit(0, 0), 1);
  EXPECT_EQ(r.solution->startup(0, 0), 1);
  EXPECT_NEAR(r.solution->dispatch(0, 0, 0), 50.0, 1e-6);

  // Already on: no startup cost.
  const SolveResult on = solve_uc(fixtures::single_unit(50.0, 100.0, 1), {});
  ASSERT_TRUE(on.solved());
  EXPECT_NEAR(on.objective, 10.0 + 100.0, 1e-6);
}

TEST(Solve, ScenarioRaisesDemand) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const SolveResult r = solve_uc(inst, fixtures::net_error_set(inst, {{7.5}, {-3.0}}));
  ASSERT_TRUE(r.solved());
  EXPECT_NEAR(r.objective, 15.0 + 57.5 * 2.0, 1e-6);
}

TEST(Solve, InfeasibleWhenDemandExceedsCapacity) {
  const SolveResult r = solve_uc(fixtures::single_unit(150.0), {});
  EXPECT_FALSE(r.solved());
  EXPECT_EQ(r.status, SolveStatus::kInfeasible);
  const UCInstance inst = fixtures::single_unit(90.0);
  EXPECT_FALSE(solve_uc(inst, fixtures::net_error_set(inst, {{20.0}})).solved());
}

TEST(Solve, AgreesWithEnumerationOracle) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const UCInstance inst = synth_instance({3, 3, 1, 2, 1}, seed);
    const ScenarioSet scen = sample_scenarios(inst, 10, Distribution::parse("gaussian:0.05"), seed);
    const SolveResult milp = solve_uc(inst, scen, tight());
    const OracleResult oracle = enumerate_oracle(inst, scen);
    ASSERT_TRUE(milp.solved());
    ASSERT_TRUE(oracle.best.solved());
    EXPECT_TRUE(relative_close(milp.objective, oracle.best.objective, 1e-6))
        << "seed " << seed << ": " << milp.objective << " vs " << oracle.best.objective;
  }
}

TEST(Oracle, EnumeratesEveryPatternForTwoSteps) {
  UCInstance inst = fixtures::single_unit(20.0);
  inst.forecasts.load = Matrix<double>(2, 1, 20.0);
  inst.forecasts.wind = Matrix<double>(2, 0);
  const OracleResult o = enumerate_oracle(inst, {});
  EXPECT_EQ(o.patterns_enumerated, 4u);
  EXPECT_EQ(o.patterns_feasible, 1u);  // only on-on covers both steps
  EXPECT_NEAR(o.best.objective, 2 * 10.0 + 5.0 + 40.0 * 2.0, 1e-6);
}

TEST(Oracle, MinimumUpTimePrunesPatterns) {
  UCInstance inst = fixtures::single_unit(0.0);
  inst.forecasts.load = Matrix<double>(3, 1, 0.0);
  inst.forecasts.wind = Matrix<double>(3, 0);
  inst.fleet.min_up = {2};
  // Patterns with a start at t=2 followed by off at t=3 are excluded: 010.
  EXPECT_EQ(enumerate_oracle(inst, {}).patterns_enumerated, 7u);
}

TEST(Oracle, RejectsLargeInstances) {
  EXPECT_THROW(enumerate_oracle(synth_instance({4, 4, 1, 1, 0}, 1), {}), std::invalid_argument);
}

TEST(Solve, EveryScenarioRowHolds) {
  const UCInstance inst = synth_instance({5, 6, 2, 3, 1}, 12);
  const ScenarioSet scen = sample_scenarios(inst, 40, Distribution::parse("gaussian:0.05:0.5"), 3);
  const SolveResult r = solve_uc(inst, scen);
  ASSERT_TRUE(r.solved());
  EXPECT_TRUE(check_deterministic_feasibility(inst, *r.solution).empty());
  for (std::size_t i = 0; i < scen.size(); ++i)
    for (std::size_t t = 0; t < inst.horizon(); ++t)
      for (std::size_t k = 0; k < inst.cases(); ++k) {
        double supply = 0.0;
        for (std::size_t g = 0; g < inst.generators(); ++g) supply += r.solution->dispatch(t, k, g);
        EXPECT_GE(supply, inst.forecasts.net_demand(t) + net_error(scen, i, t) - 1e-6);
      }
}

TEST(Solve, RedundantCapacityRowsLeaveOptimumUnchanged) {
  const UCInstance inst = synth_instance({4, 4, 2, 2, 1}, 5);
  FormulationOptions opt;
  opt.include_redundant_capacity = true;
  const SolveResult plain = solve(build_duc(inst), tight());
  const SolveResult extra = solve(build_duc(inst, opt), tight());
  ASSERT_TRUE(plain.solved());
  ASSERT_TRUE(extra.solved());
  EXPECT_TRUE(relative_close(plain.objective, extra.objective, 1e-6));
}

TEST(Solve, ReportedObjectiveMatchesEvaluatedCost) {
  const UCInstance inst = synth_instance({4, 5, 2, 2, 1}, 2);
  const SolveResult r = solve_uc(inst, {});
  ASSERT_TRUE(r.solved());
  EXPECT_TRUE(relative_close(r.objective, evaluate_cost(inst, *r.solution), 1e-9));
  EXPECT_EQ(r.values.size(), build_duc(inst).num_variables());
}

TEST(Solve, WarmStartKeepsOptimum) {
  const UCInstance inst = synth_instance({4, 4, 2, 2, 1}, 7);
  const ScenarioSet scen = sample_scenarios(inst, 20, Distribution::parse("gaussian:0.05"), 2);
  const SolveResult cold = solve_uc(inst, scen, tight());
  ASSERT_TRUE(cold.solved());
  const SolveResult warm = solve_uc(inst, scen.without(0), tight(), cold.values);
  const SolveResult plain = solve_uc(inst, scen.without(0), tight());
  ASSERT_TRUE(warm.solved());
  EXPECT_TRUE(relative_close(warm.objective, plain.objective, 1e-7));
  // A wrongly sized start is ignored rather than fatal.
  const std::vector<double> junk(3, 0.0);
  EXPECT_TRUE(solve_uc(inst, scen, tight(), junk).solved());
}

TEST(Solve, UnknownBackendThrows) {
  SolverConfig c;
  c.backend = "no-such-solver";
  EXPECT_THROW(solve_uc(fixtures::single_unit(10.0), {}, c), SolverError);
}

TEST(Solve, EnvironmentOverridesBackend) {
  ::setenv("CCUC_SOLVER", "no-such-solver", 1);
  EXPECT_THROW(solve_uc(fixtures::single_unit(10.0), {}), SolverError);
  ::unsetenv("CCUC_SOLVER");
  EXPECT_TRUE(solve_uc(fixtures::single_unit(10.0), {}).solved());
}

TEST(RelativeClose, Semantics) {
  EXPECT_TRUE(relative_close(1e6, 1e6 + 0.5, 1e-6));
  EXPECT_FALSE(relative_close(1e6, 1e6 + 2.0, 1e-6));
  EXPECT_TRUE(relative_close(0.0, 5e-7, 1e-6));
}

}  // namespace
