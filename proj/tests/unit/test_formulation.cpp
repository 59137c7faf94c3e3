#include <gtest/gtest.h>

#include <algorithm>

#include "ccuc/errors.hpp"
#include "ccuc/formulation.hpp"
#include "ccuc/solver.hpp"
#include "test_util.hpp"

namespace {

using namespace ccuc;

std::size_t expected_min_rows(const UCInstance& inst, const std::vector<int>& window) {
  const std::size_t nt = inst.horizon();
  std::size_t rows = 0;
  for (std::size_t t = 1; t < nt; ++t)
    for (int w : window) rows += std::min(t + w - 1, nt - 1) - t;
  return rows;
}

TEST(BuildDuc, ColumnAndRowCounts) {
  const UCInstance inst = synth_instance({2, 3, 1, 2, 1}, 6);
  const MilpModel m = build_duc(inst);
  EXPECT_TRUE(m.validate().empty());
  const std::size_t nt = 3, ng = 2, nc = 2;
  EXPECT_EQ(m.num_binaries(), 3 * nt * ng);
  EXPECT_EQ(m.num_variables(), 3 * nt * ng + nt * nc * ng + nt * ng);

  const auto fam = m.row_families();
  EXPECT_EQ(fam.at("balance"), nt * nc);
  for (const char* name : {"ramp_lo", "ramp_hi", "contingency_lo", "contingency_hi"})
    EXPECT_EQ(fam.at(name), nt * nc * ng) << name;
  for (const char* name : {"capacity_lo", "capacity_hi", "reserve_lo", "reserve_hi", "startup",
                           "shutdown"})
    EXPECT_EQ(fam.at(name), nt * ng) << name;
  const std::size_t on = expected_min_rows(inst, inst.fleet.min_up);
  const std::size_t off = expected_min_rows(inst, inst.fleet.min_down);
  EXPECT_EQ(fam.contains("min_on") ? fam.at("min_on") : 0, on);
  EXPECT_EQ(fam.contains("min_off") ? fam.at("min_off") : 0, off);
  EXPECT_FALSE(fam.contains("contingency_cap_lo"));
  EXPECT_FALSE(fam.contains("U"));
}

TEST(BuildDuc, SingleStepHasNoMinimumTimeRows) {
  UCInstance inst = synth_instance({3, 1, 1, 1, 0}, 2);
  inst.fleet.min_up = {4, 4, 4};
  inst.fleet.min_down = {3, 3, 3};
  const auto fam = build_duc(inst).row_families();
  EXPECT_FALSE(fam.contains("min_on"));
  EXPECT_FALSE(fam.contains("min_off"));
}

TEST(BuildDuc, MinimumTimeWindowsClipAtHorizon) {
  UCInstance inst = fixtures::single_unit(10.0);
  inst.forecasts.load = Matrix<double>(4, 1, 10.0);
  inst.forecasts.wind = Matrix<double>(4, 0);
  inst.fleet.min_up = {3};
  const MilpModel m = build_duc(inst);
  // t=2: to 3,4; t=3: to 4; t=4: none.
  EXPECT_EQ(m.row_families().at("min_on"), 3u);
  std::vector<std::string> names;
  for (const auto& c : m.constraints())
    if (c.name.starts_with("min_on")) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"min_on[t=2,i=1,to=3]", "min_on[t=2,i=1,to=4]",
                                             "min_on[t=3,i=1,to=4]"}));
}

TEST(BuildDuc, RedundantCapacityRowsAreOptional) {
  const UCInstance inst = synth_instance({2, 3, 1, 2, 1}, 6);
  FormulationOptions opt;
  opt.include_redundant_capacity = true;
  const auto fam = build_duc(inst, opt).row_families();
  EXPECT_EQ(fam.at("contingency_cap_lo"), 3u * 2 * 2);
  EXPECT_EQ(fam.at("contingency_cap_hi"), 3u * 2 * 2);
}

TEST(BuildDuc, FirstStepRampUsesMaskedInitialOutput) {
  const UCInstance inst = synth_instance({3, 2, 2, 1, 0}, 4);
  const MilpModel m = build_duc(inst);
  for (const auto& c : m.constraints()) {
    if (!c.name.starts_with("ramp_hi[t=1,")) continue;
    ParsedName p;
    ASSERT_TRUE(parse_indexed_name(c.name, p));
    const std::size_t k = p.index.at("k"), i = p.index.at("i") - 1;
    const double a = inst.contingencies.availability(k, i);
    EXPECT_DOUBLE_EQ(c.rhs, a * (inst.fleet.ramp_up[i] + inst.fleet.initial_output[i])) << c.name;
    ASSERT_EQ(c.terms.size(), 1u);
  }
}

TEST(BuildDuc, NamesAndDeterminism) {
  const UCInstance inst = synth_instance({3, 4, 2, 2, 1}, 8);
  const MilpModel a = build_duc(inst);
  const MilpModel b = build_duc(inst);
  ASSERT_EQ(a.num_constraints(), b.num_constraints());
  for (std::size_t r = 0; r < a.num_constraints(); ++r) {
    EXPECT_EQ(a.constraints()[r].name, b.constraints()[r].name);
    EXPECT_EQ(a.constraints()[r].rhs, b.constraints()[r].rhs);
  }
  EXPECT_EQ(commit_name(0, 0), "z[t=1,i=1]");
  EXPECT_EQ(dispatch_name(2, 0, 4), "g[t=3,k=0,i=5]");
  EXPECT_EQ(reserve_name(1, 2), "r[t=2,i=3]");
  EXPECT_GE(a.find("g[t=4,k=2,i=3]"), 0);
  EXPECT_EQ(a.find("g[t=5,k=0,i=1]"), -1);
}

TEST(BuildDuc, RejectsInvalidInstance) {
  UCInstance inst = fixtures::single_unit(10.0);
  inst.fleet.max_output = {1.0};
  EXPECT_THROW(build_duc(inst), DataError);
}

TEST(BuildSuc, EmptySetEqualsDeterministicModel) {
  const UCInstance inst = synth_instance({3, 3, 1, 2, 1}, 3);
  const MilpModel d = build_duc(inst);
  const MilpModel s = build_suc(inst, ScenarioSet{});
  EXPECT_EQ(d.num_constraints(), s.num_constraints());
  EXPECT_EQ(d.num_variables(), s.num_variables());
  EXPECT_EQ(d.row_families(), s.row_families());
}

TEST(BuildSuc, OneRowPerScenarioStepAndCase) {
  const UCInstance inst = synth_instance({3, 4, 2, 2, 1}, 3);
  const ScenarioSet scen = sample_scenarios(inst, 7, Distribution::parse("gaussian:0.05"), 1);
  const MilpModel m = build_suc(inst, scen);
  EXPECT_EQ(m.row_families().at("U"), 7u * 4 * 3);
  EXPECT_EQ(m.num_constraints(), build_duc(inst).num_constraints() + 7u * 4 * 3);
  // Spot-check one row's right-hand side.
  for (const auto& c : m.constraints()) {
    if (c.name != "U[i=5,t=2,k=1]") continue;
    EXPECT_NEAR(c.rhs, inst.forecasts.net_demand(1) + net_error(scen, 4, 1), 1e-9);
    EXPECT_EQ(c.terms.size(), 3u);
  }
  EXPECT_THROW(build_suc(inst, ScenarioSet(2, 5, 2, 1)), DataError);
}

TEST(BuildSuc, OnlyTheLargestErrorRowBinds) {
  // n_t = 1, n_k = 0: three U rows, and the optimum equals the one with the
  // single largest row.
  const UCInstance inst = fixtures::single_unit(40.0);
  const SolveResult all = solve_uc(inst, fixtures::net_error_set(inst, {{3.0}, {8.0}, {5.0}}));
  const SolveResult top = solve_uc(inst, fixtures::net_error_set(inst, {{8.0}}));
  ASSERT_TRUE(all.solved());
  ASSERT_TRUE(top.solved());
  EXPECT_EQ(build_suc(inst, fixtures::net_error_set(inst, {{3.0}, {8.0}, {5.0}}))
                .row_families()
                .at("U"),
            3u);
  EXPECT_NEAR(all.objective, top.objective, 1e-9);
  EXPECT_NEAR(all.solution->dispatch(0, 0, 0), 48.0, 1e-6);
}

TEST(ExtractSolution, RoundTripsThroughColumnNames) {
  const UCInstance inst = synth_instance({2, 3, 1, 1, 0}, 1);
  const MilpModel m = build_duc(inst);
  std::vector<double> values(m.num_variables());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = 0.25 * static_cast<double>(j);
  const UCSolution s = extract_solution(m, values);
  EXPECT_EQ(s.horizon(), 3u);
  EXPECT_EQ(s.generators(), 2u);
  EXPECT_EQ(s.cases(), 2u);
  const int g = m.find(dispatch_name(2, 1, 1));
  EXPECT_DOUBLE_EQ(s.dispatch(2, 1, 1), 0.25 * g);
  const int z = m.find(commit_name(0, 1));
  EXPECT_EQ(s.commit(0, 1), 0.25 * z > 0.5 ? 1 : 0);
  EXPECT_THROW(extract_solution(m, std::vector<double>(3)), SolverError);
}

TEST(MilpModel, MergesTermsAndValidates) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kContinuous, 0, 5, 1.0);
  const int y = m.add_variable("y", VarKind::kBinary, 0, 1);
  m.add_constraint("c", {{y, 2.0}, {x, 1.0}, {y, -2.0}, {x, 3.0}}, Sense::kLessEqual, 4.0);
  ASSERT_EQ(m.constraints()[0].terms.size(), 1u);
  EXPECT_EQ(m.constraints()[0].terms[0].var, x);
  EXPECT_EQ(m.constraints()[0].terms[0].coef, 4.0);
  EXPECT_THROW(m.add_constraint("bad", {{7, 1.0}}, Sense::kEqual, 0.0), std::out_of_range);
  EXPECT_TRUE(m.validate().empty());
  EXPECT_EQ(m.num_binaries(), 1u);
  ParsedName p;
  EXPECT_TRUE(parse_indexed_name("g[t=3,k=0,i=17]", p));
  EXPECT_EQ(p.symbol, "g");
  EXPECT_EQ(p.index.at("i"), 17);
  EXPECT_FALSE(parse_indexed_name("plain", p));
}

}  // namespace
