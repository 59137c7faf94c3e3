#pragma once

#include <span>
#include <string>

#include "ccuc/instance.hpp"
#include "ccuc/milp_model.hpp"
#include "ccuc/scenarios.hpp"

namespace ccuc {

struct FormulationOptions {
  /// Also emit the per-contingency capacity rows
  /// a^k o g_lo o z <= g^{t,k} <= a^k o g_hi o z, which the reserve and
  /// contingency rows already imply.
  bool include_redundant_capacity = false;
};

/// Deterministic commitment model. Columns: z, u, v (binary, n_t x n_g each),
/// g (n_t x (n_k+1) x n_g), r (n_t x n_g). Rows, by name prefix: balance,
/// ramp_lo/ramp_hi, contingency_lo/contingency_hi, capacity_lo/capacity_hi,
/// reserve_lo/reserve_hi, startup, shutdown, min_on, min_off.
MilpModel build_duc(const UCInstance& inst, const FormulationOptions& options = {});

/// build_duc plus one row `U[i=..,t=..,k=..]` per (scenario, step, case):
/// 1'g^{t,k} >= 1'(d_hat^t + d~^{t,i}) - 1'(w_hat^t + w~^{t,i}).
MilpModel build_suc(const UCInstance& inst, const ScenarioSet& scen,
                    const FormulationOptions& options = {});

/// Column names, 1-based in t and i, 0-based in k.
std::string commit_name(std::size_t t, std::size_t i);
std::string startup_name(std::size_t t, std::size_t i);
std::string shutdown_name(std::size_t t, std::size_t i);
std::string dispatch_name(std::size_t t, std::size_t k, std::size_t i);
std::string reserve_name(std::size_t t, std::size_t i);

/// Rebuilds a UCSolution from column values by parsing column names; the
/// shape is inferred from the largest indices present. Binaries are rounded.
UCSolution extract_solution(const MilpModel& model, std::span<const double> values);

}  // namespace ccuc
