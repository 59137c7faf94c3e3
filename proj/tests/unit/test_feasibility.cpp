#include <gtest/gtest.h>

#include <algorithm>

#include "ccuc/feasibility.hpp"
#include "ccuc/solver.hpp"
#include "test_util.hpp"

namespace {

using namespace ccuc;

bool has(const std::vector<FeasibilityIssue>& issues, const std::string& id) {
  return std::ranges::any_of(issues, [&](const FeasibilityIssue& x) { return x.id == id; });
}

// Single unit over `steps` steps with flat demand and the given commitment.
std::pair<UCInstance, UCSolution> flat_schedule(const std::vector<int>& on, int min_up,
                                                int min_down) {
  UCInstance inst = fixtures::single_unit(0.0);
  const std::size_t nt = on.size();
  inst.fleet.min_up = {min_up};
  inst.fleet.min_down = {min_down};
  inst.forecasts.load = Matrix<double>(nt, 1, 0.0);
  inst.forecasts.wind = Matrix<double>(nt, 0);
  UCSolution sol = UCSolution::zeros(inst);
  int prev = inst.fleet.initial_on[0];
  for (std::size_t t = 0; t < nt; ++t) {
    sol.commit(t, 0) = on[t];
    sol.startup(t, 0) = on[t] > prev;
    sol.shutdown(t, 0) = on[t] < prev;
    sol.dispatch(t, 0, 0) = on[t] ? inst.fleet.min_output[0] : 0.0;
    prev = on[t];
  }
  return {inst, sol};
}

TEST(Feasibility, SolverOutputIsFeasible) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const UCInstance inst = synth_instance({4, 5, 2, 2, 1}, seed);
    const SolveResult r = solve_uc(inst, {});
    ASSERT_TRUE(r.solved()) << "seed " << seed;
    const auto issues = check_deterministic_feasibility(inst, *r.solution);
    EXPECT_TRUE(issues.empty()) << "seed " << seed << ": " << issues.front().id;
  }
}

TEST(Feasibility, OutputWhileOffBreaksCapacity) {
  UCInstance inst = fixtures::single_unit(5.0);
  UCSolution sol = UCSolution::zeros(inst);
  sol.dispatch(0, 0, 0) = 5.0;
  const auto issues = check_deterministic_feasibility(inst, sol);
  EXPECT_TRUE(has(issues, "capacity_hi[t=1,i=1]"));
  EXPECT_TRUE(has(issues, "consistency[t=1,k=0,i=1]"));
}

TEST(Feasibility, FlippedCommitmentBreaksMinimumOnTime) {
  auto [inst, sol] = flat_schedule({0, 1, 1, 1}, 3, 1);
  EXPECT_TRUE(check_deterministic_feasibility(inst, sol).empty());
  // Shut down one step after starting at t=2 while min_on = 3.
  sol.commit(2, 0) = 0;
  sol.dispatch(2, 0, 0) = 0.0;
  sol.shutdown(2, 0) = 1;
  sol.startup(3, 0) = 1;
  const auto issues = check_deterministic_feasibility(inst, sol);
  EXPECT_TRUE(has(issues, "min_on[t=2,i=1,to=3]"));
  EXPECT_FALSE(std::ranges::any_of(issues, [](const FeasibilityIssue& x) {
    return x.family != ConstraintFamily::kMinOn;
  }));
}

TEST(Feasibility, MinimumOffTime) {
  auto [inst, sol] = flat_schedule({1, 0, 1, 1}, 1, 2);
  inst.fleet.initial_on = {1};
  inst.fleet.initial_output = {10.0};
  sol.startup(0, 0) = 0;
  const auto issues = check_deterministic_feasibility(inst, sol);
  EXPECT_TRUE(has(issues, "min_off[t=2,i=1,to=3]"));
}

TEST(Feasibility, StartupAndShutdownLogic) {
  auto [inst, sol] = flat_schedule({1, 1}, 1, 1);
  sol.startup(0, 0) = 0;  // started from z0 = 0 without a startup
  EXPECT_TRUE(has(check_deterministic_feasibility(inst, sol), "startup[t=1,i=1]"));
  auto [inst2, sol2] = flat_schedule({1, 0}, 1, 1);
  sol2.shutdown(1, 0) = 0;
  EXPECT_TRUE(has(check_deterministic_feasibility(inst2, sol2), "shutdown[t=2,i=1]"));
}

TEST(Feasibility, FirstStepRampUsesMaskedInitialOutput) {
  // Two units; contingency 1 removes unit 1, which starts at 30 MW with a
  // 5 MW ramp limit.
  UCInstance inst = synth_instance({2, 1, 1, 1, 0}, 3);
  GeneratorFleet& f = inst.fleet;
  f.min_output = {10.0, 10.0};
  f.max_output = {100.0, 100.0};
  f.ramp_down = {-5.0, -100.0};
  f.ramp_up = {5.0, 100.0};
  f.initial_on = {1, 1};
  f.initial_output = {30.0, 50.0};
  inst.forecasts.load = Matrix<double>(1, 1, 80.0);
  UCSolution sol = UCSolution::zeros(inst);
  for (std::size_t i = 0; i < 2; ++i) sol.commit(0, i) = 1;
  sol.dispatch(0, 0, 0) = 30.0;
  sol.dispatch(0, 0, 1) = 50.0;
  sol.reserve(0, 1) = 30.0;
  sol.dispatch(0, 1, 0) = 0.0;  // 30 -> 0 in one step is fine only because g0 is masked
  sol.dispatch(0, 1, 1) = 80.0;
  EXPECT_TRUE(check_deterministic_feasibility(inst, sol).empty());
  sol.dispatch(0, 1, 0) = 8.0;
  const auto issues = check_deterministic_feasibility(inst, sol);
  EXPECT_TRUE(has(issues, "consistency[t=1,k=1,i=1]"));
  EXPECT_TRUE(has(issues, "ramp_hi[t=1,k=1,i=1]"));
}

TEST(Feasibility, BalanceAndReserve) {
  UCInstance inst = fixtures::single_unit(50.0);
  UCSolution sol = UCSolution::zeros(inst);
  sol.commit(0, 0) = 1;
  sol.startup(0, 0) = 1;
  sol.dispatch(0, 0, 0) = 40.0;
  sol.reserve(0, 0) = 70.0;
  const auto issues = check_deterministic_feasibility(inst, sol);
  EXPECT_TRUE(has(issues, "balance[t=1,k=0]"));
  EXPECT_TRUE(has(issues, "reserve_hi[t=1,i=1]"));
  EXPECT_TRUE(has(issues, "reserve_lo[t=1,i=1]"));
  sol.reserve(0, 0) = -1.0;
  EXPECT_TRUE(has(check_deterministic_feasibility(inst, sol), "reserve_sign[t=1,i=1]"));
}

TEST(Feasibility, ToleranceIsAbsolute) {
  UCInstance inst = fixtures::single_unit(50.0);
  UCSolution sol = UCSolution::zeros(inst);
  sol.commit(0, 0) = 1;
  sol.startup(0, 0) = 1;
  sol.dispatch(0, 0, 0) = 50.0 - 5e-7;
  EXPECT_TRUE(check_deterministic_feasibility(inst, sol).empty());
  sol.dispatch(0, 0, 0) = 50.0 - 2e-6;
  EXPECT_TRUE(has(check_deterministic_feasibility(inst, sol), "balance[t=1,k=0]"));
}

}  // namespace
