// Acceptance suite: one PASS/FAIL line per criterion on stdout, progress on
// stderr. Exit status is nonzero when any criterion fails, except those
// listed with --expected-fail, which are still reported as FAIL (or XPASS).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI11.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ccuc/experiment.hpp"
#include "ccuc/formulation.hpp"
#include "ccuc/risk.hpp"
#include "ccuc/sample_complexity.hpp"
#include "ccuc/scenarios.hpp"
#include "ccuc/solver.hpp"

namespace {

using namespace ccuc;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void note(const std::string& msg) { std::cerr << "  .. " << msg << std::endl; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Criterion 10 is checked on every s-UC solved anywhere in the suite.
struct TrainingAudit {
  std::size_t checked = 0;
  std::vector<std::string> offenders;

  void check(const std::string& label, const UCInstance& inst, const UCSolution& sol,
             const ScenarioSet& train) {
    if (train.empty()) return;
    ++checked;
    const std::size_t v = empirical_violation(inst, sol, train).violated;
    if (v != 0) offenders.push_back(label + " (" + std::to_string(v) + " violated)");
  }
};

TrainingAudit audit;

const double kEpsilons[] = {0.3, 0.2, 0.1, 0.075, 0.05, 0.025, 0.01};

Outcome table_row(std::uint64_t h, const std::vector<std::uint64_t>& want, double budget) {
  const auto t0 = Clock::now();
  std::vector<std::uint64_t> got;
  for (double eps : kEpsilons) got.push_back(required_sample_size({eps, 1e-4, h}));
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "got {";
  for (std::size_t j = 0; j < got.size(); ++j) os << (j ? ", " : "") << got[j];
  os << "} in " << secs << " s (limit " << budget << " s)";
  return {got == want && secs < budget, os.str()};
}

Outcome criterion1() { return table_row(24, {143, 221, 455, 610, 921, 1853, 4650}, 1.0); }

Outcome criterion2() {
  return table_row(75168, {253416, 380419, 761394, 1015370, 1523320, 3047161, 7618678}, 30.0);
}

// Exact binomial coefficients and 50-digit floats, summed term by term.
double reference_tail(std::uint64_t n, double eps, std::uint64_t h) {
  namespace mp = boost::multiprecision;
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

Outcome criterion3() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 200)(rng);
    const double eps = std::uniform_real_distribution<double>(0.001, 0.9)(rng);
    const std::uint64_t h = std::uniform_int_distribution<std::uint64_t>(1, n + 1)(rng);
    const double want = reference_tail(n, eps, h);
    const double got = binomial_tail(n, eps, h);
    worst = std::max(worst, std::abs(got - want) / want);
  }
  std::ostringstream os;
  os << "100 triples, worst relative error " << worst << " (limit 1e-12)";
  return {worst <= 1e-12, os.str()};
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  const Distribution dist = Distribution::parse("gaussian:0.05:0.5");
  std::size_t trials = 0, subset_ok = 0, bound_ok = 0, modes_agree = 0, total_support = 0;
  std::size_t max_support = 0;
  std::vector<std::string> problems;
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const std::size_t ng = 3 + seed % 3;                // 3..5
    const std::size_t nt = 4 + (seed / 3) % 3;          // 4..6
    const std::size_t nk = seed % 3;                    // 0..2
    const std::size_t n = 20 + 10 * (seed % 4);         // 20..50
    const UCInstance inst = synth_instance({ng, nt, nk, 2, 1}, seed);
    const ScenarioSet scen = sample_scenarios(inst, n, dist, 1000 + seed);
    ++trials;

    SupportOptions brute;
    brute.mode = SupportMode::kBruteForce;
    const SupportReport b = find_support_scenarios(inst, scen, brute);
    const SupportReport c = find_support_scenarios(inst, scen, SupportOptions{});
    const auto reduced = reduce_scenarios(scen);

    const bool subset = std::ranges::includes(reduced, b.support_indices);
    subset_ok += subset;
    bound_ok += b.support_indices.size() <= nt;
    modes_agree += b.support_indices == c.support_indices;
    total_support += b.support_indices.size();
    max_support = std::max(max_support, b.support_indices.size());
    if (!subset || b.support_indices != c.support_indices)
      problems.push_back("seed " + std::to_string(seed));

    const SolveResult base = solve_uc(inst, scen, brute.solver);
    if (base.solved()) audit.check("support seed " + std::to_string(seed), inst, *base.solution, scen);
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << trials << " instances: S within reduce output " << subset_ok << "/" << trials
     << ", |S| <= n_t " << bound_ok << "/" << trials << ", modes identical " << modes_agree << "/"
     << trials << "; mean |S| " << static_cast<double>(total_support) / trials << ", max |S| "
     << max_support << "; " << secs << " s (limit 900 s)";
  if (!problems.empty()) os << "; mismatches at " << problems.front();
  const bool pass = trials >= 20 && subset_ok == trials && bound_ok == trials &&
                    modes_agree == trials && secs < 900.0;
  return {pass, os.str()};
}

Outcome criterion5() {
  const UCInstance inst = synth_instance({10, 24, 10, 20, 3}, 1);
  const ScenarioSet scen = sample_scenarios(inst, 1000, Distribution::parse("gaussian:0.05:0.5"), 2024);
  SolverConfig tight;
  tight.mip_gap = kSupportMipGap;

  // Both timings cover model construction and the solve.
  auto t0 = Clock::now();
  const SolveResult full = solve(build_suc(inst, scen), tight);
  const double full_secs = seconds_since(t0);
  note("full model: " + std::to_string(full_secs) + " s");

  t0 = Clock::now();
  const ScenarioSet reduced_set = scen.subset(reduce_scenarios(scen));
  const SolveResult reduced = solve(build_suc(inst, reduced_set), tight);
  const double reduced_secs = seconds_since(t0);
  note("reduced model: " + std::to_string(reduced_secs) + " s");

  if (!full.solved() || !reduced.solved()) return {false, "a solve failed"};
  audit.check("reduction full", inst, *full.solution, scen);
  audit.check("reduction reduced", inst, *reduced.solution, scen);

  const double rel = std::abs(full.objective - reduced.objective) /
                     std::max({1.0, std::abs(full.objective), std::abs(reduced.objective)});
  const double speedup = full_secs / reduced_secs;
  std::ostringstream os;
  os << "|S-bar| = " << reduced_set.size() << ", objectives " << full.objective << " vs "
     << reduced.objective << " (rel diff " << rel << ", limit 1e-6); time " << full_secs << " s vs "
     << reduced_secs << " s, speedup " << speedup << "x (need >= 5x)";
  return {reduced_set.size() <= 24 && rel <= 1e-6 && speedup >= 5.0, os.str()};
}

Outcome criterion6() {
  const Distribution dist = Distribution::parse("gaussian:0.05:0.5");
  // (n_g, n_t) with n_g * n_t <= 12.
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 6}, {3, 4}, {4, 3}, {6, 2},
                                                        {2, 5}, {3, 3}, {2, 4}, {1, 12}};
  std::size_t count = 0, agree = 0;
  double worst = 0.0;
  SolverConfig config;  // default gap 1e-4
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const auto [ng, nt] = shapes[seed % std::size(shapes)];
    const std::size_t nk = ng > 1 ? std::min<std::size_t>(ng - 1, seed % 3) : 0;
    const std::size_t n = (seed % 4) * 10;  // 0, 10, 20, 30 scenarios
    const UCInstance inst = synth_instance({ng, nt, nk, 2, 1}, seed);
    const ScenarioSet scen = sample_scenarios(inst, n, dist, 500 + seed);
    const SolveResult milp = solve_uc(inst, scen, config);
    const OracleResult oracle = enumerate_oracle(inst, scen, config);
    ++count;
    if (milp.solved() != oracle.best.solved()) continue;
    if (!milp.solved()) {
      ++agree;  // both infeasible
      continue;
    }
    audit.check("oracle seed " + std::to_string(seed), inst, *milp.solution, scen);
    audit.check("oracle enum seed " + std::to_string(seed), inst, *oracle.best.solution, scen);
    const double rel = std::abs(milp.objective - oracle.best.objective) /
                       std::max(1.0, std::abs(oracle.best.objective));
    worst = std::max(worst, rel);
    agree += rel <= 1e-4;
  }
  std::ostringstream os;
  os << agree << "/" << count << " instances agree; worst relative difference " << worst
     << " (limit 1e-4)";
  return {count >= 20 && agree == count, os.str()};
}

Outcome criterion7() {
  const Distribution dist = Distribution::parse("gaussian:0.05:0.5");
  SolverConfig tight;
  tight.mip_gap = kSupportMipGap;
  FormulationOptions with_rows;
  with_rows.include_redundant_capacity = true;
  std::size_t count = 0, agree = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t ng = 4 + seed % 3, nt = 4 + seed % 5, nk = 1 + seed % 3;
    const UCInstance inst = synth_instance({ng, nt, nk, 3, 2}, seed);
    const ScenarioSet scen = sample_scenarios(inst, 20 + 5 * (seed % 5), dist, 700 + seed);
    const SolveResult plain = solve(build_suc(inst, scen), tight);
    const SolveResult extra = solve(build_suc(inst, scen, with_rows), tight);
    ++count;
    if (!plain.solved() || !extra.solved()) continue;
    audit.check("redundancy plain seed " + std::to_string(seed), inst, *plain.solution, scen);
    audit.check("redundancy extra seed " + std::to_string(seed), inst, *extra.solution, scen);
    const double rel = std::abs(plain.objective - extra.objective) /
                       std::max({1.0, std::abs(plain.objective), std::abs(extra.objective)});
    worst = std::max(worst, rel);
    agree += rel <= 1e-6;
  }
  std::ostringstream os;
  os << agree << "/" << count << " problems agree; worst relative difference " << worst
     << " (limit 1e-6)";
  return {count >= 20 && agree == count, os.str()};
}

Outcome criterion8() {
  const auto t0 = Clock::now();
  const double eps = 0.2, beta = 0.05;
  const std::size_t nt = 6;
  const std::uint64_t n = required_sample_size({eps, beta, nt});
  const UCInstance inst = synth_instance({10, nt, 10, 20, 3}, 1);
  const Distribution dist = Distribution::parse("gaussian:0.05:0.5");
  std::size_t above = 0, solved = 0;
  double mean = 0.0, worst = 0.0;
  for (std::uint64_t trial = 1; trial <= 20; ++trial) {
    const ScenarioSet train = sample_scenarios(inst, n, dist, trial_seed(88, n, trial));
    const ScenarioSet test = sample_scenarios(inst, 10000, dist, trial_seed(89, n, trial));
    const SolveResult r = solve_uc(inst, train);
    if (!r.solved()) continue;
    ++solved;
    audit.check("guarantee trial " + std::to_string(trial), inst, *r.solution, train);
    const double e = empirical_violation(inst, *r.solution, test).epsilon_hat;
    above += e > eps;
    mean += e;
    worst = std::max(worst, e);
  }
  mean /= std::max<std::size_t>(solved, 1);
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "N = " << n << ", " << solved << "/20 solved, " << above
     << " trials with epsilon_hat > 0.2 (limit 2); mean epsilon_hat " << mean << ", max " << worst
     << "; " << secs << " s (limit 1800 s)";
  return {solved == 20 && above <= 2 && secs < 1800.0, os.str()};
}

Outcome criterion9() {
  ExperimentConfig config;  // desk-scale defaults: synth(10, 24, 10, 20, 3), N in {100, 400, 1000}
  config.support = false;   // support analysis is covered by criterion 4
  const UCInstance inst = experiment_instance(config);
  const ExperimentReport report = run_experiment(inst, config, [](const ExperimentRow& row) {
    std::ostringstream os;
    os << "N=" << row.n << " trial=" << row.trial << " " << row.status << " objective="
       << row.objective << " epsilon_hat=" << row.epsilon_hat << " (" << row.wall_time << " s)";
    note(os.str());
  });
  // Recompute each trial's training-set check through the public audit path.
  std::size_t failed = 0;
  for (const ExperimentRow& row : report.rows) {
    if (!row.ok) {
      ++failed;
      continue;
    }
    ++audit.checked;
    if (row.training_violations != 0)
      audit.offenders.push_back("sweep N=" + std::to_string(row.n) + " trial " +
                                std::to_string(row.trial));
  }
  bool eps_decreasing = true, obj_nondecreasing = true;
  std::ostringstream os;
  for (std::size_t j = 0; j < report.aggregates.size(); ++j) {
    const ExperimentAggregate& a = report.aggregates[j];
    os << (j ? "; " : "") << "N=" << a.n << ": objective " << a.objective_mean << ", epsilon_hat "
       << a.epsilon_mean;
    if (j > 0) {
      const ExperimentAggregate& p = report.aggregates[j - 1];
      eps_decreasing = eps_decreasing && a.epsilon_mean < p.epsilon_mean;
      obj_nondecreasing = obj_nondecreasing && a.objective_mean >= p.objective_mean;
    }
  }
  os << "; failed rows " << failed;
  return {failed == 0 && eps_decreasing && obj_nondecreasing, os.str()};
}

Outcome criterion10() {
  std::ostringstream os;
  os << audit.checked << " solved scenario problems checked on their training sets, "
     << audit.offenders.size() << " with violations";
  if (!audit.offenders.empty()) os << " (first: " << audit.offenders.front() << ")";
  return {audit.checked > 0 && audit.offenders.empty(), os.str()};
}

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only, expected_fail;
  app.add_option("--only", only, "Run only these criteria (10 then covers just those runs)")
      ->delimiter(',');
  app.add_option("--expected-fail", expected_fail,
                 "Criteria known to fail; reported but not counted in the exit status")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "sample size table, h = 24", criterion1},
      {2, "sample size table, h = 75168", criterion2},
      {3, "binomial tail vs extended precision", criterion3},
      {4, "support scenarios lie in the reduced set", criterion4},
      {5, "scenario reduction equivalence and speed", criterion5},
      {6, "MILP vs exhaustive enumeration", criterion6},
      {7, "redundant capacity rows", criterion7},
      {8, "statistical guarantee, n_t = 6", criterion8},
      {9, "desk-scale trend over N", criterion9},
      {10, "zero training-set violation", criterion10},
  };
  const std::set<int> selected(only.begin(), only.end());
  const std::set<int> xfail(expected_fail.begin(), expected_fail.end());

  int unexpected = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    std::cerr << "criterion " << c.id << ": " << c.title << std::endl;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const bool known = xfail.contains(c.id);
    const char* tag = out.pass ? (known ? "XPASS" : "PASS") : "FAIL";
    std::printf("[%s] %2d %s: %s [%.1f s]%s\n", tag, c.id, c.title.c_str(), out.detail.c_str(),
                seconds_since(t0), !out.pass && known ? " (expected failure)" : "");
    std::fflush(stdout);
    if (!out.pass && !known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
