#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ccuc/instance.hpp"

namespace ccuc {
namespace {

double round_to(double v, double step) { return std::round(v / step) * step; }

}  // namespace

UCInstance synth_instance(const SynthShape& shape, std::uint64_t seed) {
  const std::size_t ng = shape.generators;
  const std::size_t nt = shape.horizon;
  const std::size_t nk = shape.outages;
  if (ng < 1 || nt < 1 || shape.loads < 1)
    throw std::invalid_argument("synth_instance: n_g, n_t and n_d must be >= 1");
  if (nk > ng) throw std::invalid_argument("synth_instance: n_k must not exceed n_g");
  if (ng == 1 && nk == 1)
    throw std::invalid_argument(
        "synth_instance: a single-generator fleet cannot cover its own outage");

  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  UCInstance inst;
  GeneratorFleet& f = inst.fleet;
  for (std::size_t i = 0; i < ng; ++i) {
    const double cap = round_to(uniform(50.0, 300.0), 0.1);
    const double lo = round_to(cap * uniform(0.2, 0.4), 0.1);
    const double ramp = round_to(cap * uniform(0.5, 1.0), 0.1);
    const double marginal = round_to(uniform(10.0, 50.0), 0.01);
    f.max_output.push_back(cap);
    f.min_output.push_back(lo);
    f.ramp_up.push_back(ramp);
    f.ramp_down.push_back(-ramp);
    f.generation_cost.push_back(marginal);
    f.no_load_cost.push_back(round_to(uniform(1.0, 4.0) * cap, 0.01));
    f.startup_cost.push_back(round_to(uniform(2.0, 10.0) * cap, 0.01));
    f.shutdown_cost.push_back(round_to(uniform(0.0, 1.0) * cap, 0.01));
    f.reserve_cost.push_back(round_to(marginal * uniform(0.1, 0.3), 0.01));
    const int max_dur = static_cast<int>(std::min<std::size_t>(nt, 4));
    f.min_up.push_back(std::uniform_int_distribution<int>(1, max_dur)(rng));
    f.min_down.push_back(std::uniform_int_distribution<int>(1, max_dur)(rng));
  }

  ContingencySet& c = inst.contingencies;
  c.availability = Matrix<int>(nk + 1, ng, 1);
  c.weights.assign(nk + 1, nk == 0 ? 0.0 : 1.0 / static_cast<double>(nk));
  c.weights[0] = 1.0;
  for (std::size_t k = 1; k <= nk; ++k) c.availability(k, k - 1) = 0;

  // Capacity left after the worst modelled outage bounds the peak load.
  const double total_cap = std::accumulate(f.max_output.begin(), f.max_output.end(), 0.0);
  double largest_outage = 0.0;
  for (std::size_t k = 0; k < nk; ++k) largest_outage = std::max(largest_outage, f.max_output[k]);
  const double peak = 0.6 * (total_cap - largest_outage);

  std::vector<double> load_share(shape.loads);
  for (double& s : load_share) s = uniform(0.5, 1.5);
  const double share_sum = std::accumulate(load_share.begin(), load_share.end(), 0.0);

  const double phase = uniform(0.0, 2.0 * std::numbers::pi);
  ForecastSeries& fc = inst.forecasts;
  fc.load = Matrix<double>(nt, shape.loads);
  for (std::size_t t = 0; t < nt; ++t) {
    // Daily profile in [0.5, 1] of peak.
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / 24.0 + phase;
    const double profile = 0.75 + 0.25 * std::sin(angle);
    for (std::size_t j = 0; j < shape.loads; ++j)
      fc.load(t, j) = round_to(peak * profile * load_share[j] / share_sum, 0.001);
  }

  fc.wind = Matrix<double>(nt, shape.winds);
  if (shape.winds > 0) {
    std::vector<double> level(shape.winds);
    for (double& l : level) l = uniform(0.3, 0.9);
    const double farm_cap = 0.15 * peak / static_cast<double>(shape.winds);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t w = 0; w < shape.winds; ++w) {
        level[w] = std::clamp(level[w] + uniform(-0.1, 0.1), 0.05, 1.0);
        fc.wind(t, w) = round_to(farm_cap * level[w], 0.001);
      }
    }
  }

  // Initial state: cheapest units cover 1.3x the first-step net demand.
  const double need = fc.net_demand(0);
  std::vector<std::size_t> order(ng);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f.generation_cost[a] < f.generation_cost[b];
  });
  f.initial_on.assign(ng, 0);
  f.initial_output.assign(ng, 0.0);
  double committed = 0.0;
  double floor_sum = 0.0;
  for (std::size_t i : order) {
    if (committed >= 1.3 * need) break;
    f.initial_on[i] = 1;
    committed += f.max_output[i];
    floor_sum += f.min_output[i];
  }
  const double span = committed - floor_sum;
  const double level =
      span > 0.0 ? std::clamp((need - floor_sum) / span, 0.0, 1.0) : 0.0;
  for (std::size_t i = 0; i < ng; ++i) {
    if (f.initial_on[i] == 1)
      f.initial_output[i] = round_to(
          f.min_output[i] + level * (f.max_output[i] - f.min_output[i]), 0.001);
    f.initial_output[i] = std::clamp(f.initial_output[i],
                                     f.initial_on[i] ? f.min_output[i] : 0.0,
                                     f.initial_on[i] ? f.max_output[i] : 0.0);
  }
  return inst;
}

}  // namespace ccuc
