#pragma once

#include <cstdint>

namespace ccuc {

/// Target violation probability, confidence parameter and support bound.
struct RiskSpec {
  double epsilon = 0.1;
  double beta = 1e-4;
  std::uint64_t support_bound = 1;  // h >= 1

  /// Throws std::invalid_argument unless 0 < epsilon < 1, 0 < beta < 1, h >= 1.
  void validate() const;
};

/// sum_{i=0}^{h-1} C(N, i) eps^i (1 - eps)^(N - i).
///
/// Term recurrence in extended precision with periodic rescaling, so N up
/// to 1e8 neither overflows nor underflows. Requires 1 <= h <= N + 1 and
/// 0 < eps < 1.
double binomial_tail(std::uint64_t n, double eps, std::uint64_t h);

/// Smallest N with binomial_tail(N, epsilon, h) <= beta.
std::uint64_t required_sample_size(const RiskSpec& spec);

struct EpsilonBound {
  double epsilon = 1.0;
  bool vacuous = false;  // N < h: no guarantee available
};

/// Smallest eps (within 1e-9) with binomial_tail(N, eps, h) <= beta. The
/// returned value always satisfies the inequality.
EpsilonBound epsilon_bound(std::uint64_t n, double beta, std::uint64_t h);

inline constexpr double kEpsilonBoundTol = 1e-9;

}  // namespace ccuc
