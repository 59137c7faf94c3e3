#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccuc/instance.hpp"
#include "ccuc/milp_model.hpp"
#include "ccuc/scenarios.hpp"

namespace ccuc {

inline constexpr double kDefaultMipGap = 1e-4;

struct SolverConfig {
  std::string backend = "highs";
  double mip_gap = kDefaultMipGap;
  std::optional<double> time_limit;  // seconds; none by default
  /// Re-solve the continuous part with binaries fixed, so dispatch values
  /// are exactly consistent with the rounded commitment.
  bool polish = true;
  bool verbose = false;
};

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kUnbounded, kLimit };

std::string_view status_name(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<UCSolution> solution;
  double objective = 0.0;
  double objective_bound = 0.0;
  double gap = 0.0;
  double wall_time = 0.0;  // seconds
  std::vector<double> values;  // raw column values, usable as a warm start

  bool solved() const {
    return solution.has_value() &&
           (status == SolveStatus::kOptimal || status == SolveStatus::kFeasible);
  }
};

/// Runs the configured backend on `model` and maps the point back to a
/// UCSolution through column names. Throws SolverError when the backend is
/// unavailable or fails internally.
/// `start`, when non-empty, is offered to the backend as an initial incumbent.
SolveResult solve(const MilpModel& model, const SolverConfig& config = {},
                  std::span<const double> start = {});

/// Convenience: build_suc (or build_duc for an empty set) then solve.
SolveResult solve_uc(const UCInstance& inst, const ScenarioSet& scen,
                     const SolverConfig& config = {}, std::span<const double> start = {});

struct OracleResult {
  SolveResult best;
  std::size_t patterns_enumerated = 0;  // commitment patterns passing the logic rows
  std::size_t patterns_feasible = 0;
};

inline constexpr std::size_t kOracleMaxBinaryCells = 12;

/// Exhaustive reference: every commitment pattern satisfying the minimum
/// up/down rows, startup/shutdown set to their least values, continuous part
/// solved as an LP with binaries fixed. Requires n_g * n_t <= 12.
OracleResult enumerate_oracle(const UCInstance& inst, const ScenarioSet& scen,
                              const SolverConfig& config = {});

/// |a - b| <= tol * max(1, |a|, |b|).
bool relative_close(double a, double b, double tol);

}  // namespace ccuc
