#include "ccuc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ccuc/backend.hpp"
#include "ccuc/errors.hpp"
#include "ccuc/formulation.hpp"

namespace ccuc {

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kLimit: return "limit";
  }
  return "unknown";
}

bool relative_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace {

BackendOptions backend_options(const SolverConfig& config) {
  return {config.mip_gap, config.time_limit, config.verbose};
}

SolveStatus map_status(BackendStatus s) {
  switch (s) {
    case BackendStatus::kOptimal: return SolveStatus::kOptimal;
    case BackendStatus::kFeasible: return SolveStatus::kFeasible;
    case BackendStatus::kInfeasible: return SolveStatus::kInfeasible;
    case BackendStatus::kUnbounded: return SolveStatus::kUnbounded;
    case BackendStatus::kLimit: return SolveStatus::kLimit;
    case BackendStatus::kError: break;
  }
  throw SolverError("MILP backend reported an internal error");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SolveResult solve(const MilpModel& model, const SolverConfig& config,
                  std::span<const double> start) {
  const auto began = std::chrono::steady_clock::now();
  auto backend = make_backend(resolve_backend_name(config.backend));
  backend->set_options(backend_options(config));
  backend->load(model);
  if (!start.empty()) backend->set_start(start);

  SolveResult result;
  result.status = map_status(backend->optimize());
  if (!backend->has_solution() || result.status == SolveStatus::kInfeasible ||
      result.status == SolveStatus::kUnbounded) {
    result.wall_time = seconds_since(began);
    return result;
  }

  std::vector<double> values = backend->primal_values();
  result.objective = backend->objective_value();
  result.objective_bound = backend->objective_bound();
  result.gap = backend->relative_gap();
  if (result.status == SolveStatus::kLimit) result.status = SolveStatus::kFeasible;

  if (config.polish && model.num_binaries() > 0) {
    const auto& vars = model.variables();
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (vars[j].kind != VarKind::kBinary) continue;
      const double bit = values[j] > 0.5 ? 1.0 : 0.0;
      backend->set_column_bounds(static_cast<int>(j), bit, bit);
    }
    backend->set_integrality(false);
    if (backend->optimize() == BackendStatus::kOptimal && backend->has_solution()) {
      values = backend->primal_values();
      result.objective = backend->objective_value();
    }
  }

  UCSolution sol = extract_solution(model, values);
  sol.objective = result.objective;
  sol.mip_gap = result.gap;
  result.solution = std::move(sol);
  result.values = std::move(values);
  result.wall_time = seconds_since(began);
  return result;
}

SolveResult solve_uc(const UCInstance& inst, const ScenarioSet& scen, const SolverConfig& config,
                     std::span<const double> start) {
  return solve(scen.empty() ? build_duc(inst) : build_suc(inst, scen), config, start);
}

OracleResult enumerate_oracle(const UCInstance& inst, const ScenarioSet& scen,
                              const SolverConfig& config) {
  const std::size_t nt = inst.horizon();
  const std::size_t ng = inst.generators();
  if (nt * ng > kOracleMaxBinaryCells)
    throw std::invalid_argument("enumerate_oracle: n_g * n_t = " + std::to_string(nt * ng) +
                                " exceeds " + std::to_string(kOracleMaxBinaryCells));
  const auto start = std::chrono::steady_clock::now();
  const MilpModel model = scen.empty() ? build_duc(inst) : build_suc(inst, scen);
  const GeneratorFleet& f = inst.fleet;

  Matrix<int> zcol(nt, ng), ucol(nt, ng), vcol(nt, ng);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t i = 0; i < ng; ++i) {
      zcol(t, i) = model.find(commit_name(t, i));
      ucol(t, i) = model.find(startup_name(t, i));
      vcol(t, i) = model.find(shutdown_name(t, i));
    }
  }

  auto backend = make_backend(resolve_backend_name(config.backend));
  backend->set_options(backend_options(config));
  backend->load(model);
  backend->set_integrality(false);

  auto logic_ok = [&](const Matrix<int>& z) {
    for (std::size_t t = 1; t < nt; ++t) {
      for (std::size_t i = 0; i < ng; ++i) {
        const int rise = z(t, i) - z(t - 1, i);
        const std::size_t on_end = std::min(t + static_cast<std::size_t>(f.min_up[i]) - 1, nt - 1);
        for (std::size_t s = t + 1; s <= on_end; ++s)
          if (rise > z(s, i)) return false;
        const std::size_t off_end = std::min(t + static_cast<std::size_t>(f.min_down[i]) - 1, nt - 1);
        for (std::size_t s = t + 1; s <= off_end; ++s)
          if (-rise > 1 - z(s, i)) return false;
      }
    }
    return true;
  };

  OracleResult out;
  std::vector<double> best_values;
  double best = kInf;
  Matrix<int> z(nt, ng);
  const std::uint64_t patterns = std::uint64_t{1} << (nt * ng);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    for (std::size_t t = 0; t < nt; ++t)
      for (std::size_t i = 0; i < ng; ++i) z(t, i) = static_cast<int>((mask >> (t * ng + i)) & 1);
    if (!logic_ok(z)) continue;
    ++out.patterns_enumerated;

    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t i = 0; i < ng; ++i) {
        const int prev = t == 0 ? f.initial_on[i] : z(t - 1, i);
        const double on = z(t, i);
        const double up = std::max(0, z(t, i) - prev);
        const double down = std::max(0, prev - z(t, i));
        backend->set_column_bounds(zcol(t, i), on, on);
        backend->set_column_bounds(ucol(t, i), up, up);
        backend->set_column_bounds(vcol(t, i), down, down);
      }
    }
    if (backend->optimize() != BackendStatus::kOptimal || !backend->has_solution()) continue;
    ++out.patterns_feasible;
    const double obj = backend->objective_value();
    if (obj < best) {
      best = obj;
      best_values = backend->primal_values();
    }
  }

  SolveResult& r = out.best;
  if (!best_values.empty()) {
    r.status = SolveStatus::kOptimal;
    r.objective = best;
    r.objective_bound = best;
    UCSolution sol = extract_solution(model, best_values);
    sol.objective = best;
    r.solution = std::move(sol);
    r.values = std::move(best_values);
  } else {
    r.status = SolveStatus::kInfeasible;
  }
  r.wall_time = seconds_since(start);
  return out;
}

}  // namespace ccuc
