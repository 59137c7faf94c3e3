#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccuc/instance.hpp"
#include "ccuc/scenarios.hpp"
#include "ccuc/solver.hpp"

namespace ccuc {

/// Absolute MW slack allowed before a supply shortfall counts as a violation.
inline constexpr double kViolationTol = 1e-6;

struct ViolationCheck {
  bool violated = false;
  double shortfall = 0.0;  // largest deficit over (t, k), 0 when covered
};

/// Whether some contingency dispatch of `sol` fails to cover the net demand
/// realised by `trajectory`: 1'g^{t,k} + 1'(w_hat + w~) < 1'(d_hat + d~) - tol.
/// Throws DataError when the trajectory shape does not match the instance.
ViolationCheck is_violated(const UCInstance& inst, const UCSolution& sol,
                           const TrajectoryView& trajectory, double tol = kViolationTol);

struct ViolationReport {
  std::size_t tested = 0;
  std::size_t violated = 0;
  double epsilon_hat = 0.0;
  std::vector<std::uint8_t> per_scenario;  // 1 where violated
  double worst_shortfall = 0.0;
};

/// Out-of-sample violation frequency over `test_set`. Throws
/// std::invalid_argument for an empty test set.
ViolationReport empirical_violation(const UCInstance& inst, const UCSolution& sol,
                                    const ScenarioSet& test_set, double tol = kViolationTol);

enum class SupportMode {
  kBruteForce,  // remove every scenario in turn, solving over the rest
  kCandidates,  // only the per-step worst scenarios can be support
};

/// Support detection compares optimal objectives, so its solves need a much
/// tighter gap than the default.
inline constexpr double kSupportMipGap = 1e-9;
inline constexpr double kSupportRelTol = 1e-6;

struct SupportOptions {
  SupportMode mode = SupportMode::kCandidates;
  SolverConfig solver = [] {
    SolverConfig c;
    c.mip_gap = kSupportMipGap;
    return c;
  }();
  double rel_tol = kSupportRelTol;
  std::size_t jobs = 1;
};

struct SupportReport {
  std::vector<std::size_t> support_indices;    // S, ascending, 0-based
  std::vector<std::size_t> candidate_indices;  // S-bar, ascending, 0-based
  std::vector<std::size_t> tested_indices;
  std::vector<double> removal_objectives;  // parallel to tested_indices
  double base_objective = 0.0;
  double support_objective = 0.0;  // optimum over S alone
  bool nondegenerate = false;
};

/// Scenario i is support when dropping it moves the optimal objective by
/// more than `rel_tol` relative. In candidate mode the base problem and each
/// removal problem are solved over their reduced equivalents
/// (reduce_scenarios), which carry the same optimum. Brute-force mode solves
/// every problem over the literal scenario set. Throws SolverError if the
/// base problem cannot be solved.
SupportReport find_support_scenarios(const UCInstance& inst, const ScenarioSet& scen,
                                     const SupportOptions& options = {});

struct CurvePoint {
  std::uint64_t n = 0;
  double epsilon = 1.0;
  bool vacuous = false;
};

/// epsilon_bound(N, beta, h = n_t) for every N in the grid.
std::vector<CurvePoint> theoretical_curve(std::uint64_t horizon, double beta,
                                          const std::vector<std::uint64_t>& n_grid);

nlohmann::json violation_to_json(const ViolationReport& report);
nlohmann::json support_to_json(const SupportReport& report);

}  // namespace ccuc
