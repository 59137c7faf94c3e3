#include <cstdlib>

#include "Highs.h"
#include "ccuc/backend.hpp"
#include "ccuc/errors.hpp"

namespace ccuc {

namespace {

double to_highs(double v) {
  if (v == kInf) return kHighsInf;
  if (v == -kInf) return -kHighsInf;
  return v;
}

class HighsBackend final : public MilpBackend {
 public:
  HighsBackend() {
    highs_.setOptionValue("output_flag", false);
    highs_.setOptionValue("random_seed", 0);
  }

  std::string_view name() const override { return "highs"; }

  void set_options(const BackendOptions& options) override {
    highs_.setOptionValue("output_flag", options.verbose);
    highs_.setOptionValue("mip_rel_gap", options.mip_gap);
    highs_.setOptionValue("time_limit", options.time_limit ? *options.time_limit : kHighsInf);
  }

  void load(const MilpModel& model) override {
    HighsLp lp;
    const auto& vars = model.variables();
    const auto& rows = model.constraints();
    lp.num_col_ = static_cast<HighsInt>(vars.size());
    lp.num_row_ = static_cast<HighsInt>(rows.size());
    lp.col_cost_ = model.objective();
    lp.sense_ = ObjSense::kMinimize;
    binaries_.clear();
    lp.integrality_.assign(vars.size(), HighsVarType::kContinuous);
    for (std::size_t j = 0; j < vars.size(); ++j) {
      lp.col_lower_.push_back(to_highs(vars[j].lower));
      lp.col_upper_.push_back(to_highs(vars[j].upper));
      if (vars[j].kind == VarKind::kBinary) {
        lp.integrality_[j] = HighsVarType::kInteger;
        binaries_.push_back(static_cast<HighsInt>(j));
      }
    }
    if (binaries_.empty()) lp.integrality_.clear();

    // Column-wise storage is what HiGHS works with internally.
    std::vector<HighsInt> count(vars.size() + 1, 0);
    for (const Constraint& c : rows) {
      for (const LinearTerm& t : c.terms) ++count[t.var + 1];
      switch (c.sense) {
        case Sense::kLessEqual:
          lp.row_lower_.push_back(-kHighsInf);
          lp.row_upper_.push_back(c.rhs);
          break;
        case Sense::kEqual:
          lp.row_lower_.push_back(c.rhs);
          lp.row_upper_.push_back(c.rhs);
          break;
        case Sense::kGreaterEqual:
          lp.row_lower_.push_back(c.rhs);
          lp.row_upper_.push_back(kHighsInf);
          break;
      }
    }
    for (std::size_t j = 0; j < vars.size(); ++j) count[j + 1] += count[j];
    HighsSparseMatrix& a = lp.a_matrix_;
    a.format_ = MatrixFormat::kColwise;
    a.num_col_ = lp.num_col_;
    a.num_row_ = lp.num_row_;
    a.start_ = count;
    a.index_.resize(static_cast<std::size_t>(count.back()));
    a.value_.resize(a.index_.size());
    std::vector<HighsInt> next(count.begin(), count.end() - 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const LinearTerm& t : rows[r].terms) {
        const auto at = static_cast<std::size_t>(next[t.var]++);
        a.index_[at] = static_cast<HighsInt>(r);
        a.value_[at] = t.coef;
      }
    }
    integral_ = !binaries_.empty();
    if (highs_.passModel(std::move(lp)) == HighsStatus::kError)
      throw SolverError("HiGHS rejected the model");
  }

  void set_column_bounds(int col, double lower, double upper) override {
    highs_.changeColBounds(col, to_highs(lower), to_highs(upper));
  }

  void set_integrality(bool enforce) override {
    if (binaries_.empty() || enforce == integral_) return;
    std::vector<HighsVarType> kinds(binaries_.size(),
                                    enforce ? HighsVarType::kInteger : HighsVarType::kContinuous);
    highs_.changeColsIntegrality(static_cast<HighsInt>(binaries_.size()), binaries_.data(),
                                 kinds.data());
    integral_ = enforce;
  }

  void set_start(std::span<const double> values) override {
    if (values.size() != static_cast<std::size_t>(highs_.getNumCol())) return;
    HighsSolution start;
    start.col_value.assign(values.begin(), values.end());
    start.value_valid = true;
    highs_.setSolution(start);
  }

  BackendStatus optimize() override {
    const HighsStatus run = highs_.run();
    if (run == HighsStatus::kError) return BackendStatus::kError;
    const HighsInfo& info = highs_.getInfo();
    const bool feasible = info.primal_solution_status == kSolutionStatusFeasible;
    switch (highs_.getModelStatus()) {
      case HighsModelStatus::kOptimal:
        return BackendStatus::kOptimal;
      case HighsModelStatus::kInfeasible:
        return BackendStatus::kInfeasible;
      case HighsModelStatus::kUnboundedOrInfeasible:
        // Commitment models have nonnegative costs over nonnegative columns,
        // so this status can only mean infeasible here.
        return BackendStatus::kInfeasible;
      case HighsModelStatus::kUnbounded:
        return BackendStatus::kUnbounded;
      case HighsModelStatus::kTimeLimit:
      case HighsModelStatus::kIterationLimit:
      case HighsModelStatus::kInterrupt:
        return BackendStatus::kLimit;
      case HighsModelStatus::kSolutionLimit:
      case HighsModelStatus::kObjectiveBound:
      case HighsModelStatus::kObjectiveTarget:
        return feasible ? BackendStatus::kFeasible : BackendStatus::kLimit;
      default:
        return BackendStatus::kError;
    }
  }

  bool has_solution() const override {
    return highs_.getInfo().primal_solution_status == kSolutionStatusFeasible;
  }

  std::vector<double> primal_values() const override { return highs_.getSolution().col_value; }

  double objective_value() const override { return highs_.getInfo().objective_function_value; }

  double objective_bound() const override {
    return integral_ ? highs_.getInfo().mip_dual_bound : objective_value();
  }

  double relative_gap() const override { return integral_ ? highs_.getInfo().mip_gap : 0.0; }

 private:
  Highs highs_;
  std::vector<HighsInt> binaries_;
  bool integral_ = false;
};

}  // namespace

std::vector<std::string> available_backends() { return {"highs"}; }

std::unique_ptr<MilpBackend> make_backend(std::string_view name) {
  if (name == "highs") return std::make_unique<HighsBackend>();
  throw SolverError("MILP backend '" + std::string(name) + "' is not available (built: highs)");
}

std::string resolve_backend_name(std::string configured) {
  if (const char* env = std::getenv("CCUC_SOLVER"); env != nullptr && *env != '\0')
    return env;
  return configured;
}

}  // namespace ccuc
