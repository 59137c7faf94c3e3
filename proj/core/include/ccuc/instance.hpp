#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ccuc/grid.hpp"

namespace ccuc {

/// Thermal fleet parameters, one entry per generator.
struct GeneratorFleet {
  std::vector<double> generation_cost;  // per MWh, weighted by contingency
  std::vector<double> no_load_cost;     // per committed step
  std::vector<double> reserve_cost;     // per MW of reserve
  std::vector<double> startup_cost;
  std::vector<double> shutdown_cost;
  std::vector<double> min_output;  // MW
  std::vector<double> max_output;  // MW
  std::vector<double> ramp_down;   // MW/step, <= 0 by convention
  std::vector<double> ramp_up;     // MW/step, >= 0 by convention
  std::vector<int> min_up;         // steps
  std::vector<int> min_down;       // steps
  std::vector<int> initial_on;     // commitment before the horizon
  std::vector<double> initial_output;

  std::size_t size() const { return max_output.size(); }
};

/// Availability patterns; row 0 is the no-failure base case.
struct ContingencySet {
  Matrix<int> availability;     // (n_k + 1) x n_g, entries in {0, 1}
  std::vector<double> weights;  // n_k + 1, nonnegative

  std::size_t cases() const { return availability.rows(); }
  std::size_t outages() const { return cases() == 0 ? 0 : cases() - 1; }
};

struct ForecastSeries {
  Matrix<double> load;  // n_t x n_d, MW
  Matrix<double> wind;  // n_t x n_w, MW

  std::size_t horizon() const { return load.rows(); }
  std::size_t loads() const { return load.cols(); }
  std::size_t winds() const { return wind.cols(); }

  double total_load(std::size_t t) const;
  double total_wind(std::size_t t) const;
  double net_demand(std::size_t t) const { return total_load(t) - total_wind(t); }
};

struct UCInstance {
  GeneratorFleet fleet;
  ContingencySet contingencies;
  ForecastSeries forecasts;

  std::size_t generators() const { return fleet.size(); }
  std::size_t horizon() const { return forecasts.horizon(); }
  std::size_t cases() const { return contingencies.cases(); }
};

/// Commitment schedule plus per-contingency dispatch and reserve.
struct UCSolution {
  Matrix<int> commit;        // n_t x n_g
  Matrix<int> startup;       // n_t x n_g
  Matrix<int> shutdown;      // n_t x n_g
  Tensor3<double> dispatch;  // n_t x (n_k + 1) x n_g
  Matrix<double> reserve;    // n_t x n_g
  double objective = 0.0;
  double mip_gap = 0.0;

  /// All-zero solution shaped for `inst`.
  static UCSolution zeros(const UCInstance& inst);

  std::size_t horizon() const { return commit.rows(); }
  std::size_t generators() const { return commit.cols(); }
  std::size_t cases() const { return dispatch.dim1(); }
};

struct Violation {
  std::string field;
  std::string rule;
};

/// Lists every broken data-model invariant; empty when the instance is sound.
std::vector<Violation> validate_instance(const UCInstance& inst);

/// Throws DataError carrying the first violation when `inst` is invalid.
void require_valid(const UCInstance& inst);

/// Throws DataError when `sol` is not shaped for `inst`.
void require_compatible(const UCInstance& inst, const UCSolution& sol);

struct SynthShape {
  std::size_t generators = 10;
  std::size_t horizon = 24;
  std::size_t outages = 10;
  std::size_t loads = 20;
  std::size_t winds = 3;
};

/// Seeded synthetic fleet with single-unit outages k -> generator k.
///
/// Peak load is 60% of the smallest capacity left after any modelled outage,
/// so every contingency remains coverable. Deterministic in `seed`.
UCInstance synth_instance(const SynthShape& shape, std::uint64_t seed);

/// Objective value of `sol` evaluated on `inst`.
double evaluate_cost(const UCInstance& inst, const UCSolution& sol);

}  // namespace ccuc
