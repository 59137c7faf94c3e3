#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ccuc/instance.hpp"

namespace ccuc {

/// Constraint families of the deterministic commitment problem. The same
/// names prefix the rows emitted by the model builder.
enum class ConstraintFamily {
  kBinary,       // z, u, v in {0, 1}
  kReserveSign,  // r >= 0
  kBalance,      // supply covers forecast net demand, per (t, k)
  kRamp,         // step-to-step change within availability-masked ramp limits
  kContingency,  // contingency output within base output +/- reserve
  kCapacity,     // base output within commitment-scaled bounds
  kReserve,      // base output +/- reserve within commitment-scaled bounds
  kStartup,
  kShutdown,
  kMinOn,
  kMinOff,
  kConsistency,  // unavailable or uncommitted units produce nothing
};

std::string_view family_name(ConstraintFamily family);

struct FeasibilityIssue {
  ConstraintFamily family;
  std::string id;  // e.g. "capacity[t=1,i=1]"
  double excess;   // amount by which the constraint is exceeded
};

inline constexpr double kDefaultFeasibilityTol = 1e-6;

/// Every deterministic constraint that `sol` breaks by more than `tol`.
/// Ramping at the first step is measured from the availability-masked
/// initial output. Empty iff feasible.
std::vector<FeasibilityIssue> check_deterministic_feasibility(
    const UCInstance& inst, const UCSolution& sol,
    double tol = kDefaultFeasibilityTol);

}  // namespace ccuc
