#include "ccuc/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccuc {

std::string_view family_name(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kBinary: return "binary";
    case ConstraintFamily::kReserveSign: return "reserve_sign";
    case ConstraintFamily::kBalance: return "balance";
    case ConstraintFamily::kRamp: return "ramp";
    case ConstraintFamily::kContingency: return "contingency";
    case ConstraintFamily::kCapacity: return "capacity";
    case ConstraintFamily::kReserve: return "reserve";
    case ConstraintFamily::kStartup: return "startup";
    case ConstraintFamily::kShutdown: return "shutdown";
    case ConstraintFamily::kMinOn: return "min_on";
    case ConstraintFamily::kMinOff: return "min_off";
    case ConstraintFamily::kConsistency: return "consistency";
  }
  return "unknown";
}

namespace {

class Checker {
 public:
  explicit Checker(double tol) : tol_(tol) {}

  // Records a breach of `lhs <= rhs`.
  void le(double lhs, double rhs, ConstraintFamily fam, std::string_view suffix,
          std::string index) {
    const double excess = lhs - rhs;
    if (excess > tol_) {
      std::ostringstream id;
      id << family_name(fam) << suffix << '[' << index << ']';
      issues_.push_back({fam, id.str(), excess});
    }
  }

  std::vector<FeasibilityIssue> take() { return std::move(issues_); }

 private:
  double tol_;
  std::vector<FeasibilityIssue> issues_;
};

std::string at(std::size_t t, std::size_t i) {
  return "t=" + std::to_string(t + 1) + ",i=" + std::to_string(i + 1);
}
std::string at(std::size_t t, std::size_t k, std::size_t i) {
  return "t=" + std::to_string(t + 1) + ",k=" + std::to_string(k) +
         ",i=" + std::to_string(i + 1);
}

}  // namespace

std::vector<FeasibilityIssue> check_deterministic_feasibility(
    const UCInstance& inst, const UCSolution& sol, double tol) {
  require_compatible(inst, sol);
  const GeneratorFleet& f = inst.fleet;
  const Matrix<int>& a = inst.contingencies.availability;
  const std::size_t nt = inst.horizon();
  const std::size_t ng = inst.generators();
  const std::size_t nc = inst.cases();
  using F = ConstraintFamily;
  Checker c(tol);

  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t i = 0; i < ng; ++i) {
      for (const Matrix<int>* m : {&sol.commit, &sol.startup, &sol.shutdown}) {
        const int b = (*m)(t, i);
        if (b != 0 && b != 1) c.le(1.0, 0.0, F::kBinary, "", at(t, i));
      }
      c.le(-sol.reserve(t, i), 0.0, F::kReserveSign, "", at(t, i));
    }
  }

  for (std::size_t t = 0; t < nt; ++t) {
    const double net = inst.forecasts.net_demand(t);
    for (std::size_t k = 0; k < nc; ++k) {
      double supply = 0.0;
      for (std::size_t i = 0; i < ng; ++i) supply += sol.dispatch(t, k, i);
      c.le(net, supply, F::kBalance, "",
           "t=" + std::to_string(t + 1) + ",k=" + std::to_string(k));

      for (std::size_t i = 0; i < ng; ++i) {
        const double avail = a(k, i);
        const double g = sol.dispatch(t, k, i);
        const double prev = t == 0 ? avail * f.initial_output[i] : sol.dispatch(t - 1, k, i);
        c.le(avail * f.ramp_down[i], g - prev, F::kRamp, "_lo", at(t, k, i));
        c.le(g - prev, avail * f.ramp_up[i], F::kRamp, "_hi", at(t, k, i));

        const double base = sol.dispatch(t, 0, i);
        const double r = sol.reserve(t, i);
        c.le(avail * (base - r), g, F::kContingency, "_lo", at(t, k, i));
        c.le(g, avail * (base + r), F::kContingency, "_hi", at(t, k, i));

        const bool idle = avail == 0.0 || sol.commit(t, i) == 0;
        if (idle) c.le(std::abs(g), 0.0, F::kConsistency, "", at(t, k, i));
      }
    }

    for (std::size_t i = 0; i < ng; ++i) {
      const double z = sol.commit(t, i);
      const double base = sol.dispatch(t, 0, i);
      const double r = sol.reserve(t, i);
      c.le(f.min_output[i] * z, base, F::kCapacity, "_lo", at(t, i));
      c.le(base, f.max_output[i] * z, F::kCapacity, "_hi", at(t, i));
      c.le(f.min_output[i] * z, base - r, F::kReserve, "_lo", at(t, i));
      c.le(base + r, f.max_output[i] * z, F::kReserve, "_hi", at(t, i));

      const double prev = t == 0 ? f.initial_on[i] : sol.commit(t - 1, i);
      // z^{t-1} - z^t + u^t >= 0 and z^t - z^{t-1} + v^t >= 0
      c.le(z - prev, sol.startup(t, i), F::kStartup, "", at(t, i));
      c.le(prev - z, sol.shutdown(t, i), F::kShutdown, "", at(t, i));
    }
  }

  // Minimum up/down windows start at the second step and are clipped at n_t.
  for (std::size_t t = 1; t < nt; ++t) {
    for (std::size_t i = 0; i < ng; ++i) {
      const int rise = sol.commit(t, i) - sol.commit(t - 1, i);
      const std::size_t on_end = std::min(t + static_cast<std::size_t>(f.min_up[i]) - 1, nt - 1);
      for (std::size_t s = t + 1; s <= on_end; ++s)
        c.le(rise, sol.commit(s, i), F::kMinOn, "",
             at(t, i) + ",to=" + std::to_string(s + 1));
      const std::size_t off_end = std::min(t + static_cast<std::size_t>(f.min_down[i]) - 1, nt - 1);
      for (std::size_t s = t + 1; s <= off_end; ++s)
        c.le(-rise, 1.0 - sol.commit(s, i), F::kMinOff, "",
             at(t, i) + ",to=" + std::to_string(s + 1));
    }
  }
  return c.take();
}

}  // namespace ccuc
