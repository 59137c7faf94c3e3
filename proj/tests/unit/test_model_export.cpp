#include <gtest/gtest.h>

#include <Highs.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ccuc/errors.hpp"
#include "ccuc/formulation.hpp"
#include "ccuc/model_export.hpp"
#include "ccuc/solver.hpp"

namespace {

using namespace ccuc;

struct Loaded {
  double objective = 0.0;
  std::vector<std::string> col_names, row_names;
  int integer_columns = 0;
};

// Reads the file back with the solver's own MPS parser and solves it.
Loaded read_back(const std::filesystem::path& path) {
  Highs h;
  h.setOptionValue("output_flag", false);
  h.setOptionValue("mip_rel_gap", 1e-9);
  EXPECT_EQ(h.readModel(path.string()), HighsStatus::kOk);
  EXPECT_EQ(h.run(), HighsStatus::kOk);
  Loaded out;
  out.objective = h.getInfo().objective_function_value;
  const HighsLp& lp = h.getLp();
  out.col_names = lp.col_names_;
  out.row_names = lp.row_names_;
  for (auto t : lp.integrality_) out.integer_columns += t == HighsVarType::kInteger;
  return out;
}

class MpsRoundTrip : public ::testing::TestWithParam<MpsFormat> {};

TEST_P(MpsRoundTrip, SolvesToSameObjectiveWithSameNames) {
  const UCInstance inst = synth_instance({3, 4, 2, 2, 1}, 11);
  const ScenarioSet scen = sample_scenarios(inst, 6, Distribution::parse("gaussian:0.05"), 4);
  const MilpModel model = build_suc(inst, scen);
  const auto path = std::filesystem::temp_directory_path() /
                    (GetParam() == MpsFormat::kFixed ? "ccuc_fixed.mps" : "ccuc_free.mps");
  write_mps(path, model, GetParam());

  SolverConfig tight;
  tight.mip_gap = 1e-9;
  const SolveResult direct = solve(model, tight);
  ASSERT_TRUE(direct.solved());
  const Loaded back = read_back(path);
  EXPECT_TRUE(relative_close(back.objective, direct.objective, 1e-7))
      << back.objective << " vs " << direct.objective;

  ASSERT_EQ(back.col_names.size(), model.num_variables());
  ASSERT_EQ(back.row_names.size(), model.num_constraints());
  for (std::size_t j = 0; j < model.num_variables(); ++j)
    EXPECT_EQ(back.col_names[j], model.variables()[j].name);
  for (std::size_t r = 0; r < model.num_constraints(); ++r)
    EXPECT_EQ(back.row_names[r], model.constraints()[r].name);
  EXPECT_EQ(static_cast<std::size_t>(back.integer_columns), model.num_binaries());
  std::filesystem::remove(path);
}

INSTANTIATE_TEST_SUITE_P(Formats, MpsRoundTrip,
                         ::testing::Values(MpsFormat::kFixed, MpsFormat::kFree));

TEST(MpsExport, FixedLayoutAlignsFields) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kContinuous, 0, 4, 1.5);
  const int y = m.add_variable("a_rather_long_column_name", VarKind::kBinary, 0, 1, -2.0);
  m.add_variable("free_col", VarKind::kContinuous, -kInf, kInf);
  m.add_constraint("row_one", {{x, 1.0}, {y, 2.0}}, Sense::kLessEqual, 3.0);
  m.add_constraint("r2", {{x, -1.0}}, Sense::kGreaterEqual, -1.0);
  std::ostringstream out;
  write_mps(out, m, MpsFormat::kFixed);

  std::istringstream in(out.str());
  std::string line, section;
  std::set<std::size_t> second_field_starts;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != ' ') {
      section = line;
      continue;
    }
    if (section != "COLUMNS") continue;
    // Field 1 starts at column 5 (index 4); field 2 after field 1's padded width.
    ASSERT_GT(line.size(), 4u);
    EXPECT_NE(line[4], ' ') << line;
    const std::size_t gap = line.find(' ', 4);
    const std::size_t next = line.find_first_not_of(' ', gap);
    second_field_starts.insert(next);
  }
  EXPECT_EQ(second_field_starts.size(), 1u);
  EXPECT_NE(out.str().find("'INTORG'"), std::string::npos);
  EXPECT_NE(out.str().find(" BV BND"), std::string::npos);
  EXPECT_NE(out.str().find(" FR BND"), std::string::npos);
  EXPECT_NE(out.str().find(" UP BND"), std::string::npos);
}

TEST(MpsExport, FreeLayoutIsSingleSpaced) {
  MilpModel m;
  const int x = m.add_variable("x", VarKind::kContinuous, 0, kInf, 1.0);
  m.add_constraint("c", {{x, 0.1}}, Sense::kEqual, 0.3);
  std::ostringstream out;
  write_mps(out, m, MpsFormat::kFree);
  EXPECT_NE(out.str().find(" x c 0.1\n"), std::string::npos);
  EXPECT_NE(out.str().find(" RHS c 0.3\n"), std::string::npos);
  EXPECT_EQ(out.str().find("BND x"), std::string::npos);  // default bounds omitted
}

TEST(MpsExport, RejectsWhitespaceInNames) {
  MilpModel m;
  m.add_variable("bad name", VarKind::kContinuous, 0, 1);
  std::ostringstream out;
  EXPECT_THROW(write_mps(out, m, MpsFormat::kFree), DataError);
}

}  // namespace
