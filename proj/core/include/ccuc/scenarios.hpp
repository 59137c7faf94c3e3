#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ccuc/grid.hpp"
#include "ccuc/instance.hpp"

namespace ccuc {

/// One joint load/wind forecast-error trajectory.
struct TrajectoryView {
  std::size_t horizon = 0;
  std::size_t loads = 0;
  std::size_t winds = 0;
  std::span<const double> load_error;  // horizon x loads, row-major
  std::span<const double> wind_error;  // horizon x winds, row-major

  double total_load_error(std::size_t t) const;
  double total_wind_error(std::size_t t) const;
};

/// N i.i.d. forecast-error trajectories over the full horizon.
class ScenarioSet {
 public:
  ScenarioSet() = default;
  ScenarioSet(std::size_t count, std::size_t horizon, std::size_t loads,
              std::size_t winds);

  std::size_t size() const { return load_error_.dim0(); }
  bool empty() const { return size() == 0; }
  std::size_t horizon() const { return horizon_; }
  std::size_t loads() const { return loads_; }
  std::size_t winds() const { return winds_; }

  double& load(std::size_t i, std::size_t t, std::size_t j) { return load_error_(i, t, j); }
  double load(std::size_t i, std::size_t t, std::size_t j) const { return load_error_(i, t, j); }
  double& wind(std::size_t i, std::size_t t, std::size_t w) { return wind_error_(i, t, w); }
  double wind(std::size_t i, std::size_t t, std::size_t w) const { return wind_error_(i, t, w); }

  TrajectoryView trajectory(std::size_t i) const;

  /// Scenarios at `indices`, in the given order.
  ScenarioSet subset(std::span<const std::size_t> indices) const;
  /// All scenarios except `index`.
  ScenarioSet without(std::size_t index) const;

  std::uint64_t seed = 0;
  std::string descriptor = "file";

  bool operator==(const ScenarioSet&) const = default;

 private:
  std::size_t horizon_ = 0;
  std::size_t loads_ = 0;
  std::size_t winds_ = 0;
  Tensor3<double> load_error_;  // N x n_t x n_d
  Tensor3<double> wind_error_;  // N x n_t x n_w
};

/// Parsed distribution descriptor:
///   gaussian:<sigma_frac>[:<rho>]   normal errors, sd = sigma_frac * forecast
///   uniform:<range_frac>[:<rho>]    errors uniform in +/- range_frac * forecast
///   empirical:<path>                trajectories resampled from a scenario file
/// `rho` is an optional lag-one correlation across steps of one trajectory.
struct Distribution {
  enum class Kind { kGaussian, kUniform, kEmpirical };
  Kind kind = Kind::kGaussian;
  double scale = 0.0;
  double correlation = 0.0;
  std::filesystem::path path;

  static Distribution parse(const std::string& descriptor);
  std::string describe() const;
};

/// Draws `count` trajectories. Scenario i uses its own stream seeded with
/// `seed ^ mix(i)`, so the result does not depend on generation order.
/// Realised load and wind (forecast + error) are kept nonnegative.
ScenarioSet sample_scenarios(const UCInstance& inst, std::size_t count,
                             const Distribution& dist, std::uint64_t seed);

/// Stable 64-bit mixer used to derive per-scenario and per-trial streams.
std::uint64_t mix_seed(std::uint64_t value);

/// Net forecast error 1'd~ - 1'w~ of scenario i at step t.
double net_error(const ScenarioSet& scen, std::size_t i, std::size_t t);

/// Per step, the index of the scenario with the largest net error (lowest
/// index on ties).
std::vector<std::size_t> worst_per_step(const ScenarioSet& scen);

/// Deduplicated, ascending set of per-step worst scenarios; at most n_t long.
std::vector<std::size_t> reduce_scenarios(const ScenarioSet& scen);

/// Wide CSV: header `scenario,t,d_1..d_nd,w_1..w_nw`; one row per
/// (scenario, t); scenario and t are 1-based.
void write_scenarios_csv(std::ostream& out, const ScenarioSet& scen);
void write_scenarios_csv(const std::filesystem::path& path, const ScenarioSet& scen);
ScenarioSet read_scenarios_csv(std::istream& in);
ScenarioSet read_scenarios_csv(const std::filesystem::path& path);

/// Throws DataError when `scen` does not match the instance's n_t, n_d, n_w.
void require_compatible(const UCInstance& inst, const ScenarioSet& scen);

}  // namespace ccuc
