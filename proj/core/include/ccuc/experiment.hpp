#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccuc/instance.hpp"
#include "ccuc/risk.hpp"
#include "ccuc/scenarios.hpp"
#include "ccuc/solver.hpp"

namespace ccuc {

struct ExperimentConfig {
  std::optional<std::filesystem::path> instance;  // when absent, `synth` is used
  SynthShape synth;
  std::uint64_t synth_seed = 1;
  std::string distribution = "gaussian:0.05:0.5";
  std::vector<std::uint64_t> n_grid{100, 400, 1000};
  std::size_t trials = 10;
  std::size_t test_size = 10000;
  double beta = 1e-4;
  std::uint64_t seed = 2024;
  SolverConfig solver;
  /// Candidate-mode support analysis per trial. Costs one MILP per
  /// candidate scenario, so large runs may switch it off.
  bool support = true;
  double support_mip_gap = kSupportMipGap;
  std::filesystem::path output = "experiment-out";
  std::size_t jobs = 1;

  /// Throws DataError naming the offending field.
  void validate() const;
};

/// Reads the structured-text config. Relative paths (instance, empirical
/// distribution files, output) are taken relative to the config file.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc,
                                             const std::filesystem::path& base_dir = {});
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig read_experiment_config(const std::filesystem::path& path);

/// Child seeds. Every (N, trial) draw and every per-N test set gets its own
/// stream derived from the root seed, independent of scheduling.
std::uint64_t trial_seed(std::uint64_t root, std::uint64_t n, std::uint64_t trial);
std::uint64_t test_seed(std::uint64_t root, std::uint64_t n);

struct ExperimentRow {
  std::uint64_t n = 0;
  std::size_t trial = 0;  // 1-based
  std::uint64_t seed = 0;
  std::string status;  // solver status, or "error"
  bool ok = false;     // solved and validated
  double objective = 0.0;
  double epsilon_hat = 0.0;
  std::size_t training_violations = 0;
  bool support_done = false;
  std::size_t support_size = 0;
  std::size_t candidate_size = 0;
  bool nondegenerate = false;
  double wall_time = 0.0;  // s-UC solve only
  std::string message;
};

struct ExperimentAggregate {
  std::uint64_t n = 0;
  std::size_t trials_ok = 0;
  double objective_mean = 0.0, objective_min = 0.0, objective_max = 0.0;
  double epsilon_mean = 0.0, epsilon_min = 0.0, epsilon_max = 0.0;
  std::size_t support_min = 0, support_max = 0;
  std::size_t candidate_min = 0, candidate_max = 0;
  std::size_t nondegenerate = 0;
  std::size_t support_trials = 0;
  double epsilon_bound = 1.0;
  bool bound_vacuous = false;
  std::size_t above_bound = 0;  // trials with epsilon_hat > epsilon_bound
};

struct ExperimentReport {
  std::size_t horizon = 0;
  std::vector<double> contingency_weights;  // alpha_0..alpha_nk of the instance solved
  std::vector<ExperimentRow> rows;  // ordered by (N, trial)
  std::vector<CurvePoint> curve;
  std::vector<ExperimentAggregate> aggregates;
};

/// Per-N statistics over successful rows; a pure function of its inputs.
std::vector<ExperimentAggregate> aggregate_rows(const std::vector<ExperimentRow>& rows,
                                                const std::vector<CurvePoint>& curve);

using ExperimentProgress = std::function<void(const ExperimentRow&)>;

/// Runs the sweep: for each N, one shared test set, then `trials` fresh
/// training draws solved, validated and (optionally) analysed for support.
/// Solver failures are recorded in the row and the sweep continues.
ExperimentReport run_experiment(const UCInstance& inst, const ExperimentConfig& config,
                                const ExperimentProgress& progress = {});

/// Resolves the instance (file or synthetic) named by the config.
UCInstance experiment_instance(const ExperimentConfig& config);

/// Writes rows.csv, fig2.csv, fig3.csv, table2.csv, summary.json (all
/// deterministic for a fixed config) and timings.csv into `dir`.
void write_experiment_report(const std::filesystem::path& dir, const ExperimentConfig& config,
                             const ExperimentReport& report);

}  // namespace ccuc
