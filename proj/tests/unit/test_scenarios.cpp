#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>

#include "ccuc/errors.hpp"
#include "ccuc/scenarios.hpp"
#include "test_util.hpp"

namespace {

using namespace ccuc;

// Naive re-derivation of the candidate set used to cross-check reduce_scenarios.
std::vector<std::size_t> reference_reduce(const ScenarioSet& s) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < s.horizon(); ++t) {
    std::size_t arg = 0;
    double best = -1e300;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < s.loads(); ++j) v += s.load(i, t, j);
      for (std::size_t w = 0; w < s.winds(); ++w) v -= s.wind(i, t, w);
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (std::ranges::find(out, arg) == out.end()) out.push_back(arg);
  }
  std::ranges::sort(out);
  return out;
}

TEST(SampleScenarios, DeterministicAndShaped) {
  const UCInstance inst = synth_instance({3, 6, 1, 4, 2}, 2);
  const Distribution d = Distribution::parse("gaussian:0.1:0.5");
  const ScenarioSet a = sample_scenarios(inst, 25, d, 77);
  const ScenarioSet b = sample_scenarios(inst, 25, d, 77);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample_scenarios(inst, 25, d, 78));
  EXPECT_EQ(a.size(), 25u);
  EXPECT_EQ(a.horizon(), 6u);
  EXPECT_EQ(a.loads(), 4u);
  EXPECT_EQ(a.winds(), 2u);
}

TEST(SampleScenarios, PrefixStableAcrossCounts) {
  // Per-scenario streams mean the first 10 of 40 equal a draw of 10.
  const UCInstance inst = synth_instance({3, 4, 1, 2, 1}, 5);
  const Distribution d = Distribution::parse("uniform:0.2");
  const ScenarioSet big = sample_scenarios(inst, 40, d, 9);
  const ScenarioSet small = sample_scenarios(inst, 10, d, 9);
  std::vector<std::size_t> first(10);
  std::iota(first.begin(), first.end(), 0);
  ScenarioSet head = big.subset(first);
  head.seed = small.seed;
  head.descriptor = small.descriptor;
  EXPECT_EQ(head, small);
}

TEST(SampleScenarios, ZeroScaleGivesZeroErrors) {
  const UCInstance inst = synth_instance({3, 4, 1, 2, 1}, 5);
  const ScenarioSet s = sample_scenarios(inst, 8, Distribution::parse("gaussian:0"), 1);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(net_error(s, i, t), 0.0);
}

TEST(SampleScenarios, RealisedValuesStayNonnegative) {
  const UCInstance inst = synth_instance({3, 5, 1, 3, 2}, 8);
  const ScenarioSet s = sample_scenarios(inst, 200, Distribution::parse("gaussian:2.0"), 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t t = 0; t < s.horizon(); ++t) {
      for (std::size_t j = 0; j < s.loads(); ++j)
        EXPECT_GE(inst.forecasts.load(t, j) + s.load(i, t, j), 0.0);
      for (std::size_t w = 0; w < s.winds(); ++w)
        EXPECT_GE(inst.forecasts.wind(t, w) + s.wind(i, t, w), 0.0);
    }
  }
}

TEST(SampleScenarios, UniformStaysInRange) {
  const UCInstance inst = synth_instance({3, 5, 1, 3, 0}, 8);
  const ScenarioSet s = sample_scenarios(inst, 300, Distribution::parse("uniform:0.1"), 4);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t t = 0; t < s.horizon(); ++t)
      for (std::size_t j = 0; j < s.loads(); ++j)
        EXPECT_LE(std::abs(s.load(i, t, j)), 0.1 * inst.forecasts.load(t, j) + 1e-12);
}

TEST(SampleScenarios, EmpiricalResamplesRows) {
  const UCInstance inst = synth_instance({3, 3, 1, 2, 1}, 1);
  const ScenarioSet pool = sample_scenarios(inst, 5, Distribution::parse("gaussian:0.1"), 5);
  const auto path = std::filesystem::temp_directory_path() / "ccuc_pool.csv";
  write_scenarios_csv(path, pool);
  const ScenarioSet s = sample_scenarios(inst, 30, Distribution::parse("empirical:" + path.string()), 6);
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool found = false;
    for (std::size_t p = 0; p < pool.size() && !found; ++p) {
      bool same = true;
      for (std::size_t t = 0; t < 3; ++t) same = same && net_error(s, i, t) == net_error(pool, p, t);
      found = same;
    }
    EXPECT_TRUE(found) << "scenario " << i;
  }
  std::filesystem::remove(path);
}

TEST(Distribution, ParsesAndRejects) {
  const Distribution g = Distribution::parse("gaussian:0.05:0.5");
  EXPECT_EQ(g.kind, Distribution::Kind::kGaussian);
  EXPECT_DOUBLE_EQ(g.scale, 0.05);
  EXPECT_DOUBLE_EQ(g.correlation, 0.5);
  EXPECT_EQ(Distribution::parse(g.describe()).describe(), g.describe());
  EXPECT_THROW(Distribution::parse("gaussian"), DataError);
  EXPECT_THROW(Distribution::parse("cauchy:1"), DataError);
  EXPECT_THROW(Distribution::parse("gaussian:-1"), DataError);
  EXPECT_THROW(Distribution::parse("uniform:0.1:1.5"), DataError);
  EXPECT_THROW(Distribution::parse("gaussian:abc"), DataError);
}

TEST(NetError, SumsLoadsMinusWinds) {
  ScenarioSet s(1, 1, 2, 1);
  s.load(0, 0, 0) = 3.0;
  s.load(0, 0, 1) = 4.0;
  s.wind(0, 0, 0) = 2.0;
  EXPECT_DOUBLE_EQ(net_error(s, 0, 0), 5.0);
  EXPECT_THROW(net_error(s, 1, 0), std::out_of_range);
}

TEST(ReduceScenarios, ThreeScenarioExample) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const ScenarioSet s = fixtures::net_error_set(inst, {{5.0}, {-2.0}, {7.0}});
  EXPECT_EQ(reduce_scenarios(s), std::vector<std::size_t>{2});
}

TEST(ReduceScenarios, DeduplicatesAndBreaksTiesLow) {
  UCInstance inst = fixtures::single_unit(50.0);
  inst.forecasts.load = Matrix<double>(3, 1, 50.0);
  inst.forecasts.wind = Matrix<double>(3, 0);
  // step 1: scenario 2 wins; step 2: tie between 1 and 3; step 3: scenario 2 again.
  const ScenarioSet s = fixtures::net_error_set(inst, {{1.0, 4.0, 0.0}, {9.0, 2.0, 8.0}, {0.0, 4.0, 1.0}});
  EXPECT_EQ(worst_per_step(s), (std::vector<std::size_t>{1, 0, 1}));
  EXPECT_EQ(reduce_scenarios(s), (std::vector<std::size_t>{0, 1}));
}

TEST(ReduceScenarios, MatchesNaiveReferenceOnRandomSets) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 60, nt = 1 + rng() % 8, nd = 1 + rng() % 3, nw = rng() % 3;
    ScenarioSet s(n, nt, nd, nw);
    // Coarse integer values so ties actually occur.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < nt; ++t) {
        for (std::size_t j = 0; j < nd; ++j) s.load(i, t, j) = static_cast<double>(rng() % 5);
        for (std::size_t w = 0; w < nw; ++w) s.wind(i, t, w) = static_cast<double>(rng() % 3);
      }
    const auto got = reduce_scenarios(s);
    EXPECT_EQ(got, reference_reduce(s));
    EXPECT_LE(got.size(), nt);
    EXPECT_TRUE(std::ranges::is_sorted(got));
  }
}

TEST(ReduceScenarios, PermutationMapsCandidateValues) {
  // Without ties, permuting scenarios permutes S-bar: the set of worst net
  // errors per step is unchanged.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  ScenarioSet s(30, 6, 1, 0);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t t = 0; t < 6; ++t) s.load(i, t, 0) = normal(rng);
  std::vector<std::size_t> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::ranges::shuffle(perm, rng);
  const ScenarioSet p = s.subset(perm);
  std::vector<std::size_t> mapped;
  for (std::size_t j : reduce_scenarios(p)) mapped.push_back(perm[j]);
  std::ranges::sort(mapped);
  EXPECT_EQ(mapped, reduce_scenarios(s));
}

TEST(ReduceScenarios, EmptySetGivesEmpty) {
  EXPECT_TRUE(reduce_scenarios(ScenarioSet{}).empty());
}

TEST(ScenarioSet, SubsetAndWithout) {
  const UCInstance inst = fixtures::single_unit(50.0);
  const ScenarioSet s = fixtures::net_error_set(inst, {{1.0}, {2.0}, {3.0}, {4.0}});
  const ScenarioSet w = s.without(1);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w.load(0, 0, 0), 1.0);
  EXPECT_EQ(w.load(1, 0, 0), 3.0);
  const std::vector<std::size_t> idx{3, 0};
  const ScenarioSet sub = s.subset(idx);
  EXPECT_EQ(sub.load(0, 0, 0), 4.0);
  EXPECT_EQ(sub.load(1, 0, 0), 1.0);
  EXPECT_THROW(s.without(4), std::out_of_range);
}

TEST(ScenarioCsv, RoundTripIsExact) {
  const UCInstance inst = synth_instance({3, 4, 1, 3, 2}, 4);
  const ScenarioSet s = sample_scenarios(inst, 12, Distribution::parse("gaussian:0.07"), 2);
  std::stringstream io;
  write_scenarios_csv(io, s);
  ScenarioSet back = read_scenarios_csv(io);
  back.seed = s.seed;
  back.descriptor = s.descriptor;
  EXPECT_EQ(back, s);
}

TEST(ScenarioCsv, HeaderAndIndicesAreOneBased) {
  ScenarioSet s(1, 2, 1, 1);
  std::stringstream io;
  write_scenarios_csv(io, s);
  std::string header, first;
  std::getline(io, header);
  std::getline(io, first);
  EXPECT_EQ(header, "scenario,t,d_1,w_1");
  EXPECT_EQ(first.substr(0, 4), "1,1,");
}

TEST(ScenarioCsv, RejectsMalformedFiles) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_scenarios_csv(in);
  };
  EXPECT_THROW(parse(""), DataError);
  EXPECT_THROW(parse("id,t,d_1\n1,1,0\n"), DataError);
  EXPECT_THROW(parse("scenario,t,d_2\n1,1,0\n"), DataError);
  EXPECT_THROW(parse("scenario,t,d_1\n1,1\n"), DataError);
  EXPECT_THROW(parse("scenario,t,d_1\n0,1,3\n"), DataError);
  EXPECT_THROW(parse("scenario,t,d_1\n1,1,x\n"), DataError);
  EXPECT_THROW(parse("scenario,t,d_1\n1,1,0\n1,1,0\n"), DataError);
  EXPECT_THROW(parse("scenario,t,d_1\n1,1,0\n1,2,0\n2,1,0\n"), DataError);
  EXPECT_THROW(read_scenarios_csv(std::filesystem::path("/nonexistent.csv")), DataError);
}

TEST(ScenarioCsv, IncompatibleWithInstance) {
  const UCInstance inst = synth_instance({3, 4, 1, 3, 2}, 4);
  EXPECT_THROW(require_compatible(inst, ScenarioSet(2, 5, 3, 2)), DataError);
  EXPECT_NO_THROW(require_compatible(inst, ScenarioSet(2, 4, 3, 2)));
}

}  // namespace
