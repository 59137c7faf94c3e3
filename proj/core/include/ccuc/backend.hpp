#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccuc/milp_model.hpp"

namespace ccuc {

enum class BackendStatus { kOptimal, kFeasible, kInfeasible, kUnbounded, kLimit, kError };

struct BackendOptions {
  double mip_gap = 1e-4;
  std::optional<double> time_limit;  // seconds
  bool verbose = false;
};

/// One private solver session. Not shareable across threads; create one per
/// worker.
class MilpBackend {
 public:
  virtual ~MilpBackend() = default;

  virtual std::string_view name() const = 0;
  virtual void set_options(const BackendOptions& options) = 0;
  virtual void load(const MilpModel& model) = 0;

  virtual void set_column_bounds(int col, double lower, double upper) = 0;
  /// When false, binary columns are treated as continuous.
  virtual void set_integrality(bool enforce) = 0;
  /// Offers a full column assignment as a starting incumbent. Backends
  /// without MIP starts ignore it.
  virtual void set_start(std::span<const double> values) { (void)values; }

  virtual BackendStatus optimize() = 0;

  virtual bool has_solution() const = 0;
  virtual std::vector<double> primal_values() const = 0;
  virtual double objective_value() const = 0;
  virtual double objective_bound() const = 0;
  virtual double relative_gap() const = 0;
};

/// Backends compiled into this build.
std::vector<std::string> available_backends();

/// Throws SolverError for an unknown or unavailable backend.
std::unique_ptr<MilpBackend> make_backend(std::string_view name);

/// `CCUC_SOLVER` from the environment when set, else `configured`.
std::string resolve_backend_name(std::string configured);

}  // namespace ccuc
