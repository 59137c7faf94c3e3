#pragma once

#include <span>
#include <vector>

#include "ccuc/instance.hpp"
#include "ccuc/scenarios.hpp"

namespace ccuc::fixtures {

// One generator, one load, no wind, no contingencies; demand in MW.
inline UCInstance single_unit(double demand, double capacity = 100.0, int z0 = 0) {
  UCInstance inst;
  GeneratorFleet& f = inst.fleet;
  f.generation_cost = {2.0};
  f.no_load_cost = {10.0};
  f.reserve_cost = {0.5};
  f.startup_cost = {5.0};
  f.shutdown_cost = {1.0};
  f.min_output = {10.0};
  f.max_output = {capacity};
  f.ramp_down = {-capacity};
  f.ramp_up = {capacity};
  f.min_up = {1};
  f.min_down = {1};
  f.initial_on = {z0};
  f.initial_output = {z0 ? 10.0 : 0.0};
  inst.contingencies.availability = Matrix<int>(1, 1, 1);
  inst.contingencies.weights = {1.0};
  inst.forecasts.load = Matrix<double>(1, 1, demand);
  inst.forecasts.wind = Matrix<double>(1, 0);
  return inst;
}

// Scenarios whose whole net error sits on load 1: errors[i][t].
inline ScenarioSet net_error_set(const UCInstance& inst,
                                 const std::vector<std::vector<double>>& errors) {
  ScenarioSet s(errors.size(), inst.horizon(), inst.forecasts.loads(), inst.forecasts.winds());
  for (std::size_t i = 0; i < errors.size(); ++i)
    for (std::size_t t = 0; t < inst.horizon(); ++t) s.load(i, t, 0) = errors[i][t];
  return s;
}

}  // namespace ccuc::fixtures
