#include "ccuc/risk.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ccuc/errors.hpp"
#include "parallel.hpp"
#include "ccuc/sample_complexity.hpp"

namespace ccuc {

ViolationCheck is_violated(const UCInstance& inst, const UCSolution& sol,
                           const TrajectoryView& trajectory, double tol) {
  require_compatible(inst, sol);
  if (trajectory.horizon != inst.horizon() || trajectory.loads != inst.forecasts.loads() ||
      trajectory.winds != inst.forecasts.winds())
    throw DataError("trajectory shape (" + std::to_string(trajectory.horizon) + " steps, " +
                    std::to_string(trajectory.loads) + " loads, " +
                    std::to_string(trajectory.winds) + " wind farms) does not match the instance");

  ViolationCheck out;
  double worst = 0.0;
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    // Same summation order as the scenario rows of the model.
    double error = trajectory.total_load_error(t);
    for (std::size_t w = 0; w < trajectory.winds; ++w)
      error -= trajectory.wind_error[t * trajectory.winds + w];
    const double demand = inst.forecasts.net_demand(t) + error;
    for (std::size_t k = 0; k < sol.cases(); ++k) {
      const auto fiber = sol.dispatch.fiber(t, k);
      const double supply = std::accumulate(fiber.begin(), fiber.end(), 0.0);
      worst = std::max(worst, demand - supply);
    }
  }
  out.shortfall = worst;
  out.violated = worst > tol;
  return out;
}

ViolationReport empirical_violation(const UCInstance& inst, const UCSolution& sol,
                                    const ScenarioSet& test_set, double tol) {
  if (test_set.empty()) throw std::invalid_argument("empirical_violation: empty test set");
  ViolationReport rep;
  rep.tested = test_set.size();
  rep.per_scenario.assign(rep.tested, 0);
  for (std::size_t i = 0; i < rep.tested; ++i) {
    const ViolationCheck c = is_violated(inst, sol, test_set.trajectory(i), tol);
    if (c.violated) {
      rep.per_scenario[i] = 1;
      ++rep.violated;
    }
    rep.worst_shortfall = std::max(rep.worst_shortfall, c.shortfall);
  }
  rep.epsilon_hat = static_cast<double>(rep.violated) / static_cast<double>(rep.tested);
  return rep;
}

SupportReport find_support_scenarios(const UCInstance& inst, const ScenarioSet& scen,
                                     const SupportOptions& options) {
  const bool compact = options.mode == SupportMode::kCandidates;
  auto equivalent = [&](const ScenarioSet& s) {
    return compact ? s.subset(reduce_scenarios(s)) : s;
  };

  SupportReport rep;
  rep.candidate_indices = reduce_scenarios(scen);
  const SolveResult base = solve_uc(inst, equivalent(scen), options.solver);
  if (!base.solved())
    throw SolverError("support analysis: base scenario problem ended with status '" +
                      std::string(status_name(base.status)) + "'");
  rep.base_objective = base.objective;

  if (compact) {
    rep.tested_indices = rep.candidate_indices;
  } else {
    rep.tested_indices.resize(scen.size());
    std::iota(rep.tested_indices.begin(), rep.tested_indices.end(), std::size_t{0});
  }
  rep.removal_objectives.assign(rep.tested_indices.size(), 0.0);

  // Dropping a scenario only relaxes the problem, so the base optimum is a
  // valid incumbent for every removal solve.
  detail::parallel_for(rep.tested_indices.size(), options.jobs, [&](std::size_t j) {
    const std::size_t i = rep.tested_indices[j];
    const SolveResult r = solve_uc(inst, equivalent(scen.without(i)), options.solver, base.values);
    if (!r.solved())
      throw SolverError("support analysis: removal of scenario " + std::to_string(i + 1) +
                        " ended with status '" + std::string(status_name(r.status)) + "'");
    rep.removal_objectives[j] = r.objective;
  });

  for (std::size_t j = 0; j < rep.tested_indices.size(); ++j)
    if (!relative_close(rep.removal_objectives[j], rep.base_objective, options.rel_tol))
      rep.support_indices.push_back(rep.tested_indices[j]);

  const SolveResult over_support =
      solve_uc(inst, scen.subset(rep.support_indices), options.solver);
  if (!over_support.solved())
    throw SolverError("support analysis: problem over the support set ended with status '" +
                      std::string(status_name(over_support.status)) + "'");
  rep.support_objective = over_support.objective;
  rep.nondegenerate = relative_close(rep.support_objective, rep.base_objective, options.rel_tol);
  return rep;
}

std::vector<CurvePoint> theoretical_curve(std::uint64_t horizon, double beta,
                                          const std::vector<std::uint64_t>& n_grid) {
  std::vector<CurvePoint> curve;
  curve.reserve(n_grid.size());
  for (std::uint64_t n : n_grid) {
    const EpsilonBound b = epsilon_bound(n, beta, horizon);
    curve.push_back({n, b.epsilon, b.vacuous});
  }
  return curve;
}

namespace {

// Reports number scenarios from 1, matching the scenario CSV files.
nlohmann::json one_based(const std::vector<std::size_t>& indices) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i : indices) out.push_back(i + 1);
  return out;
}

}  // namespace

nlohmann::json violation_to_json(const ViolationReport& report) {
  return {{"tested", report.tested},
          {"violated", report.violated},
          {"epsilon_hat", report.epsilon_hat},
          {"worst_shortfall", report.worst_shortfall},
          {"per_scenario", report.per_scenario}};
}

nlohmann::json support_to_json(const SupportReport& report) {
  return {{"support_indices", one_based(report.support_indices)},
          {"candidate_indices", one_based(report.candidate_indices)},
          {"tested_indices", one_based(report.tested_indices)},
          {"removal_objectives", report.removal_objectives},
          {"base_objective", report.base_objective},
          {"support_objective", report.support_objective},
          {"support_size", report.support_indices.size()},
          {"candidate_size", report.candidate_indices.size()},
          {"nondegenerate", report.nondegenerate}};
}

}  // namespace ccuc
