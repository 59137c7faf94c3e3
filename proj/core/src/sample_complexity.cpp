#include "ccuc/sample_complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccuc {

void RiskSpec::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (support_bound < 1) throw std::invalid_argument("h must be >= 1");
}

double binomial_tail(std::uint64_t n, double eps, std::uint64_t h) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("binomial_tail: eps must lie in (0, 1)");
  if (h < 1) throw std::domain_error("binomial_tail: h must be >= 1");
  if (h > n + 1)
    throw std::domain_error("binomial_tail: h = " + std::to_string(h) +
                            " exceeds N + 1 = " + std::to_string(n + 1));
  if (h == n + 1) return 1.0;

  using real = long double;
  constexpr int kShift = 1000;  // rescale by 2^-1000 to stay inside long double range
  const real ln2 = std::log(static_cast<real>(2));
  const real odds = static_cast<real>(eps) / (1.0L - static_cast<real>(eps));

  // The i = 0 term is (1 - eps)^N; track it as term * exp(log_scale).
  real log_scale = static_cast<real>(n) * std::log1p(-static_cast<real>(eps));
  real term = 1.0L;
  real sum = 0.0L;
  for (std::uint64_t i = 0; i < h; ++i) {
    sum += term;
    term *= static_cast<real>(n - i) / static_cast<real>(i + 1) * odds;
    if (term > 0x1p+8000L || sum > 0x1p+8000L) {
      term = std::ldexp(term, -kShift);
      sum = std::ldexp(sum, -kShift);
      log_scale += kShift * ln2;
    }
  }
  const real log_tail = std::log(sum) + log_scale;
  if (log_tail >= 0.0L) return 1.0;
  return static_cast<double>(std::exp(log_tail));
}

std::uint64_t required_sample_size(const RiskSpec& spec) {
  spec.validate();
  const std::uint64_t h = spec.support_bound;
  auto ok = [&](std::uint64_t n) {
    return binomial_tail(n, spec.epsilon, h) <= spec.beta;
  };

  // At N = h - 1 the tail is the full binomial sum (= 1 > beta).
  std::uint64_t lo = h - 1;
  std::uint64_t hi = std::max<std::uint64_t>(h, 1);
  while (!ok(hi)) {
    lo = hi;
    if (hi > std::numeric_limits<std::uint64_t>::max() / 4)
      throw std::overflow_error("required_sample_size: no bracket found");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

EpsilonBound epsilon_bound(std::uint64_t n, double beta, std::uint64_t h) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  if (n < h) return {1.0, true};

  double lo = 0.0;  // tail > beta
  double hi = 1.0;  // tail <= beta
  while (hi - lo > 0.25 * kEpsilonBoundTol) {
    const double mid = 0.5 * (lo + hi);
    if (binomial_tail(n, mid, h) <= beta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, false};
}

}  // namespace ccuc
