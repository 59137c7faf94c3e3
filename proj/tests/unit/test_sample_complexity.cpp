#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <stdexcept>

#include "ccuc/sample_complexity.hpp"

namespace {

using ccuc::binomial_tail;
using ccuc::epsilon_bound;
using ccuc::required_sample_size;
using ccuc::RiskSpec;
namespace mp = boost::multiprecision;

// Direct summation with exact binomial coefficients and 50-digit floats.
double reference_tail(std::uint64_t n, double eps, std::uint64_t h) {
  using big = mp::cpp_bin_float_50;
  const big e(eps);
  big sum = 0;
  mp::cpp_int choose = 1;
  for (std::uint64_t i = 0; i < h; ++i) {
    sum += big(choose) * mp::pow(e, static_cast<int>(i)) * mp::pow(1 - e, static_cast<int>(n - i));
    choose = choose * (n - i) / (i + 1);
  }
  return static_cast<double>(sum);
}

const double kEpsilons[] = {0.3, 0.2, 0.1, 0.075, 0.05, 0.025, 0.01};

TEST(BinomialTail, SmallClosedForms) {
  EXPECT_DOUBLE_EQ(binomial_tail(1, 0.5, 1), 0.5);
  EXPECT_DOUBLE_EQ(binomial_tail(10, 0.1, 11), 1.0);
  EXPECT_NEAR(binomial_tail(3, 0.2, 2), 0.8 * 0.8 * 0.8 + 3 * 0.2 * 0.8 * 0.8, 1e-15);
}

TEST(BinomialTail, TableEntryBracketsBeta) {
  EXPECT_LE(binomial_tail(455, 0.1, 24), 1e-4);
  EXPECT_GT(binomial_tail(454, 0.1, 24), 1e-4);
  EXPECT_NEAR(binomial_tail(455, 0.1, 24) / reference_tail(455, 0.1, 24), 1.0, 1e-12);
}

TEST(BinomialTail, MatchesExtendedPrecisionOnRandomTriples) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 200)(rng);
    const double eps = std::uniform_real_distribution<double>(0.001, 0.9)(rng);
    const std::uint64_t h = std::uniform_int_distribution<std::uint64_t>(1, n + 1)(rng);
    const double want = reference_tail(n, eps, h);
    const double got = binomial_tail(n, eps, h);
    EXPECT_LE(std::abs(got - want), 1e-12 * want) << "N=" << n << " eps=" << eps << " h=" << h;
  }
}

TEST(BinomialTail, LargeNStaysFinite) {
  const double v = binomial_tail(100'000'000, 0.001, 75168);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
  EXPECT_LE(v, 1.0);
  EXPECT_GT(binomial_tail(7'618'677, 0.01, 75168), 1e-4);
}

TEST(BinomialTail, RejectsDomainViolations) {
  EXPECT_THROW(binomial_tail(10, 0.0, 1), std::domain_error);
  EXPECT_THROW(binomial_tail(10, 1.0, 1), std::domain_error);
  EXPECT_THROW(binomial_tail(10, 0.5, 0), std::domain_error);
  EXPECT_THROW(binomial_tail(10, 0.5, 12), std::domain_error);
}

TEST(RequiredSampleSize, ReproducesShortHorizonRow) {
  const std::uint64_t want[] = {143, 221, 455, 610, 921, 1853, 4650};
  for (std::size_t j = 0; j < 7; ++j)
    EXPECT_EQ(required_sample_size({kEpsilons[j], 1e-4, 24}), want[j]) << kEpsilons[j];
}

TEST(RequiredSampleSize, ReproducesFullModelRow) {
  const std::uint64_t want[] = {253416, 380419, 761394, 1015370, 1523320, 3047161, 7618678};
  for (std::size_t j = 0; j < 7; ++j)
    EXPECT_EQ(required_sample_size({kEpsilons[j], 1e-4, 75168}), want[j]) << kEpsilons[j];
}

TEST(RequiredSampleSize, TrivialAndSmallCases) {
  EXPECT_EQ(required_sample_size({0.5, 0.5, 1}), 1u);
  EXPECT_EQ(required_sample_size({0.2, 0.05, 6}), 50u);
}

TEST(RequiredSampleSize, IsMinimal) {
  for (double eps : {0.3, 0.1, 0.02}) {
    for (std::uint64_t h : {1u, 3u, 24u}) {
      const std::uint64_t n = required_sample_size({eps, 1e-3, h});
      EXPECT_LE(binomial_tail(n, eps, h), 1e-3);
      if (n >= h) EXPECT_GT(binomial_tail(n - 1, eps, h), 1e-3);
    }
  }
}

TEST(RequiredSampleSize, MonotoneInParameters) {
  const double eps_grid[] = {0.4, 0.2, 0.1, 0.05};
  const double beta_grid[] = {0.1, 1e-2, 1e-4, 1e-6};
  const std::uint64_t h_grid[] = {1, 2, 6, 24};
  for (double beta : beta_grid) {
    for (std::uint64_t h : h_grid) {
      std::uint64_t prev = 0;
      for (double eps : eps_grid) {  // decreasing eps
        const std::uint64_t n = required_sample_size({eps, beta, h});
        EXPECT_GE(n, prev);
        prev = n;
      }
    }
  }
  for (double eps : eps_grid) {
    for (double beta : beta_grid) {
      std::uint64_t prev = 0;
      for (std::uint64_t h : h_grid) {
        const std::uint64_t n = required_sample_size({eps, beta, h});
        EXPECT_GE(n, prev);
        prev = n;
      }
    }
    for (std::uint64_t h : h_grid) {
      std::uint64_t prev = 0;
      for (double beta : beta_grid) {  // increasing 1 / beta
        const std::uint64_t n = required_sample_size({eps, beta, h});
        EXPECT_GE(n, prev);
        prev = n;
      }
    }
  }
}

TEST(RequiredSampleSize, ValidatesSpec) {
  EXPECT_THROW(required_sample_size({0.0, 0.1, 1}), std::invalid_argument);
  EXPECT_THROW(required_sample_size({0.1, 1.0, 1}), std::invalid_argument);
  EXPECT_THROW(required_sample_size({0.1, 0.1, 0}), std::invalid_argument);
}

TEST(EpsilonBound, InvertsTableEntry) {
  const auto at455 = epsilon_bound(455, 1e-4, 24);
  const auto at454 = epsilon_bound(454, 1e-4, 24);
  EXPECT_FALSE(at455.vacuous);
  EXPECT_LE(at455.epsilon, 0.1);
  EXPECT_GT(at454.epsilon, 0.1);
}

TEST(EpsilonBound, ExactInversionForOneSample) {
  EXPECT_NEAR(epsilon_bound(1, 0.5, 1).epsilon, 0.5, ccuc::kEpsilonBoundTol);
}

TEST(EpsilonBound, ShrinksWithMoreSamples) {
  const double big = epsilon_bound(1'000'000, 1e-4, 24).epsilon;
  EXPECT_GT(big, 0.0);
  EXPECT_LT(big, epsilon_bound(455, 1e-4, 24).epsilon);
}

TEST(EpsilonBound, VacuousBelowSupportBound) {
  const auto b = epsilon_bound(1000, 1e-4, 75168);
  EXPECT_TRUE(b.vacuous);
  EXPECT_EQ(b.epsilon, 1.0);
}

TEST(EpsilonBound, RoundTripsWithSampleSize) {
  for (std::uint64_t h : {1u, 4u, 24u}) {
    for (double beta : {0.05, 1e-4}) {
      for (std::uint64_t n : {h, h + 7, 5 * h + 40, 500 * h}) {
        const double eps = epsilon_bound(n, beta, h).epsilon;
        if (eps >= 1.0) continue;
        EXPECT_LE(required_sample_size({eps, beta, h}), n);
        if (eps - 1e-6 > 0.0) EXPECT_GT(required_sample_size({eps - 1e-6, beta, h}), n);
      }
    }
  }
}

}  // namespace
