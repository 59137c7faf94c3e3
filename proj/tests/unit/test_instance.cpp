#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>

#include "ccuc/errors.hpp"
#include "ccuc/io.hpp"
#include "ccuc/instance.hpp"
#include "ccuc/solver.hpp"
#include "test_util.hpp"

namespace {

using namespace ccuc;

UCInstance two_units() {
  UCInstance inst = fixtures::single_unit(80.0);
  GeneratorFleet& f = inst.fleet;
  for (auto* v : {&f.generation_cost, &f.no_load_cost, &f.reserve_cost, &f.startup_cost,
                  &f.shutdown_cost, &f.min_output, &f.max_output, &f.ramp_down, &f.ramp_up})
    v->push_back(v->front());
  f.min_up.push_back(1);
  f.min_down.push_back(1);
  f.initial_on.push_back(0);
  f.initial_output.push_back(0.0);
  inst.contingencies.availability = Matrix<int>(1, 2, 1);
  return inst;
}

bool mentions(const std::vector<Violation>& v, const std::string& field, const std::string& word) {
  return std::ranges::any_of(v, [&](const Violation& x) {
    return x.field.find(field) != std::string::npos && x.rule.find(word) != std::string::npos;
  });
}

TEST(ValidateInstance, WellFormedHasNoIssues) {
  EXPECT_TRUE(validate_instance(two_units()).empty());
}

TEST(ValidateInstance, BoundOrdering) {
  UCInstance inst = fixtures::single_unit(1.0);
  inst.fleet.min_output = {10.0};
  inst.fleet.max_output = {5.0};
  const auto issues = validate_instance(inst);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_TRUE(mentions(issues, "g_lo", "ordering"));
}

TEST(ValidateInstance, BaseCaseAvailability) {
  UCInstance inst = two_units();
  inst.contingencies.availability(0, 1) = 0;
  const auto issues = validate_instance(inst);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_TRUE(mentions(issues, "availability", "base-case"));
}

TEST(ValidateInstance, InitialStateRules) {
  UCInstance inst = fixtures::single_unit(1.0);
  inst.fleet.initial_output = {3.0};  // off but producing
  EXPECT_TRUE(mentions(validate_instance(inst), "g0", "initially off"));
  inst.fleet.initial_on = {1};
  inst.fleet.initial_output = {5.0};  // on below g_lo = 10
  EXPECT_TRUE(mentions(validate_instance(inst), "g0", "[g_lo, g_hi]"));
}

TEST(ValidateInstance, ShapeAndSignRules) {
  UCInstance inst = two_units();
  inst.fleet.no_load_cost.pop_back();
  EXPECT_TRUE(mentions(validate_instance(inst), "c_z", "length"));

  inst = two_units();
  inst.fleet.min_up[1] = 0;
  inst.contingencies.weights = {-1.0};
  const auto issues = validate_instance(inst);
  EXPECT_TRUE(mentions(issues, "min_on", ">= 1"));
  EXPECT_TRUE(mentions(issues, "weights", "nonnegative"));
  EXPECT_THROW(require_valid(inst), DataError);
}

TEST(SynthInstance, DeterministicAndValid) {
  const SynthShape shape{6, 5, 4, 3, 2};
  const UCInstance a = synth_instance(shape, 11);
  const UCInstance b = synth_instance(shape, 11);
  EXPECT_EQ(instance_to_json(a), instance_to_json(b));
  EXPECT_NE(instance_to_json(a), instance_to_json(synth_instance(shape, 12)));
  EXPECT_TRUE(validate_instance(a).empty());
  EXPECT_EQ(a.generators(), 6u);
  EXPECT_EQ(a.horizon(), 5u);
  EXPECT_EQ(a.cases(), 5u);
  EXPECT_EQ(a.forecasts.loads(), 3u);
  EXPECT_EQ(a.forecasts.winds(), 2u);
}

TEST(SynthInstance, SingleOutagesAndDefaultWeights) {
  const UCInstance inst = synth_instance({5, 3, 3, 2, 1}, 4);
  const auto& a = inst.contingencies.availability;
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(a(k, i), i == k - 1 ? 0 : 1);
    EXPECT_DOUBLE_EQ(inst.contingencies.weights[k], 1.0 / 3.0);
  }
  EXPECT_DOUBLE_EQ(inst.contingencies.weights[0], 1.0);
}

TEST(SynthInstance, AnySingleOutageLeavesEnoughCapacity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const UCInstance inst = synth_instance({8, 24, 8, 4, 2}, seed);
    const auto& cap = inst.fleet.max_output;
    const double total = std::accumulate(cap.begin(), cap.end(), 0.0);
    const double largest = *std::ranges::max_element(cap);
    double peak = 0.0;
    for (std::size_t t = 0; t < inst.horizon(); ++t) peak = std::max(peak, inst.forecasts.total_load(t));
    EXPECT_GT(total - largest, peak) << "seed " << seed;
  }
}

TEST(SynthInstance, MinimalShapeAndRejections) {
  const UCInstance tiny = synth_instance({1, 1, 0, 1, 0}, 7);
  EXPECT_TRUE(validate_instance(tiny).empty());
  EXPECT_EQ(tiny.cases(), 1u);
  EXPECT_THROW(synth_instance({2, 3, 3, 1, 0}, 1), std::invalid_argument);
  EXPECT_THROW(synth_instance({0, 3, 0, 1, 0}, 1), std::invalid_argument);
}

TEST(SynthInstance, LargeFleetShape) {
  const UCInstance inst = synth_instance({54, 24, 54, 99, 5}, 1);
  EXPECT_TRUE(validate_instance(inst).empty());
  EXPECT_EQ(inst.cases(), 55u);
}

TEST(EvaluateCost, HandSummedSingleUnit) {
  UCInstance inst = fixtures::single_unit(50.0);
  inst.fleet.reserve_cost = {0.0};
  inst.fleet.shutdown_cost = {0.0};
  UCSolution sol = UCSolution::zeros(inst);
  EXPECT_EQ(evaluate_cost(inst, sol), 0.0);
  sol.commit(0, 0) = 1;
  sol.startup(0, 0) = 1;
  sol.dispatch(0, 0, 0) = 50.0;
  EXPECT_DOUBLE_EQ(evaluate_cost(inst, sol), 115.0);
}

TEST(EvaluateCost, MatchesIndependentLoopOnOracleSolution) {
  const UCInstance inst = synth_instance({3, 4, 1, 2, 1}, 9);
  const OracleResult o = enumerate_oracle(inst, {});
  ASSERT_TRUE(o.best.solved());
  const UCSolution& s = *o.best.solution;
  double want = 0.0;
  const auto& f = inst.fleet;
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      want += f.no_load_cost[i] * s.commit(t, i) + f.startup_cost[i] * s.startup(t, i) +
              f.shutdown_cost[i] * s.shutdown(t, i) + f.reserve_cost[i] * s.reserve(t, i);
      want += inst.contingencies.weights[0] * f.generation_cost[i] * s.dispatch(t, 0, i);
      want += inst.contingencies.weights[1] * f.generation_cost[i] * s.dispatch(t, 1, i);
    }
  }
  EXPECT_NEAR(evaluate_cost(inst, s), want, 1e-9 * std::abs(want));
  EXPECT_NEAR(evaluate_cost(inst, s), o.best.objective, 1e-6 * std::abs(want));
}

TEST(EvaluateCost, LinearInContinuousPart) {
  const UCInstance inst = synth_instance({3, 2, 1, 1, 0}, 3);
  UCSolution sol = UCSolution::zeros(inst);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t i = 0; i < 3; ++i) {
      sol.reserve(t, i) = 1.5 + i;
      for (std::size_t k = 0; k < 2; ++k) sol.dispatch(t, k, i) = 10.0 * (t + 1) + k;
    }
  UCSolution scaled = sol;
  for (double& x : scaled.reserve.data()) x *= 3.0;
  for (double& x : scaled.dispatch.data()) x *= 3.0;
  EXPECT_NEAR(evaluate_cost(inst, scaled), 3.0 * evaluate_cost(inst, sol), 1e-9);
}

TEST(EvaluateCost, RejectsDimensionMismatch) {
  const UCInstance inst = synth_instance({3, 2, 1, 1, 0}, 3);
  UCSolution sol = UCSolution::zeros(synth_instance({2, 2, 1, 1, 0}, 3));
  EXPECT_THROW(evaluate_cost(inst, sol), DataError);
}

TEST(InstanceIo, JsonRoundTrip) {
  const UCInstance inst = synth_instance({4, 3, 2, 3, 2}, 5);
  const auto path = std::filesystem::temp_directory_path() / "ccuc_instance_roundtrip.json";
  write_instance(path, inst);
  const UCInstance back = read_instance(path);
  EXPECT_EQ(instance_to_json(back), instance_to_json(inst));
  EXPECT_EQ(back.forecasts.load, inst.forecasts.load);
  EXPECT_EQ(back.fleet.max_output, inst.fleet.max_output);
  std::filesystem::remove(path);
}

TEST(InstanceIo, RejectsMalformedDocuments) {
  auto doc = instance_to_json(synth_instance({2, 2, 1, 1, 0}, 1));
  auto missing = doc;
  missing.erase("fleet");
  EXPECT_THROW(instance_from_json(missing), DataError);
  auto wrong_count = doc;
  wrong_count["n_g"] = 3;
  EXPECT_THROW(instance_from_json(wrong_count), DataError);
  auto wrong_type = doc;
  wrong_type["fleet"]["c_g"] = "cheap";
  EXPECT_THROW(instance_from_json(wrong_type), DataError);
  EXPECT_THROW(read_instance("/nonexistent/instance.json"), DataError);
}

TEST(SolutionIo, JsonRoundTrip) {
  const UCInstance inst = synth_instance({3, 3, 1, 1, 0}, 2);
  const SolveResult r = solve_uc(inst, {});
  ASSERT_TRUE(r.solved());
  const auto doc = solution_to_json(*r.solution);
  const UCSolution back = solution_from_json(doc);
  EXPECT_EQ(back.commit, r.solution->commit);
  EXPECT_EQ(back.dispatch, r.solution->dispatch);
  EXPECT_EQ(back.reserve, r.solution->reserve);
  EXPECT_EQ(back.objective, r.solution->objective);
  EXPECT_TRUE(doc["z"][0][0].is_number_integer());
}

}  // namespace
