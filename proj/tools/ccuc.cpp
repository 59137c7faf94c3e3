// Command-line front end: sample-complexity queries, instance and scenario
// generation, solving, validation, support analysis and experiment sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI/CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ccuc/errors.hpp"
#include "ccuc/experiment.hpp"
#include "ccuc/formulation.hpp"
#include "ccuc/io.hpp"
#include "ccuc/model_export.hpp"
#include "ccuc/risk.hpp"
#include "ccuc/sample_complexity.hpp"
#include "ccuc/scenarios.hpp"
#include "ccuc/solver.hpp"

namespace {

using namespace ccuc;

enum ExitCode { kOk = 0, kUsage = 1, kSolverFailure = 2, kDataFailure = 3 };

// Raised when a model solves to a non-solution status; maps to exit code 2.
struct Unsolved : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  double mip_gap = kDefaultMipGap;
  std::size_t jobs = 1;
  std::string out;
};

void emit_json(const nlohmann::json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(out, doc);
  }
}

struct ScenarioSource {
  std::string path;
  std::size_t count = 0;
  std::string distribution = "gaussian:0.05:0.5";

  void attach(CLI::App* cmd, std::size_t default_count) {
    count = default_count;
    cmd->add_option("--scenarios", path, "Scenario CSV file (scenario,t,d_1..,w_1..)");
    cmd->add_option("--count", count, "Number of scenarios to sample when no file is given")
        ->capture_default_str();
    cmd->add_option("--distribution", distribution,
                    "gaussian:<sigma>[:<rho>], uniform:<r>[:<rho>] or empirical:<csv>")
        ->capture_default_str();
  }

  ScenarioSet load(const UCInstance& inst, std::uint64_t seed) const {
    ScenarioSet s = path.empty() ? sample_scenarios(inst, count, Distribution::parse(distribution), seed)
                                 : read_scenarios_csv(path);
    require_compatible(inst, s);
    return s;
  }
};

SolverConfig solver_config(const Globals& g, std::optional<double> time_limit) {
  SolverConfig c;
  c.mip_gap = g.mip_gap;
  c.time_limit = time_limit;
  return c;
}

nlohmann::json solve_summary(const SolveResult& r) {
  nlohmann::json j = {{"status", status_name(r.status)}, {"wall_time", r.wall_time}};
  if (r.solved()) {
    j["objective"] = r.objective;
    j["objective_bound"] = r.objective_bound;
    j["gap"] = r.gap;
  }
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"Chance-constrained unit commitment with the scenario approach"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--mip-gap", g.mip_gap, "Relative MIP gap")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file or directory (default: stdout where applicable)");

  // sample-size
  RiskSpec spec;
  auto* sample_size = app.add_subcommand("sample-size", "Smallest N meeting (epsilon, beta, h)");
  sample_size->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  sample_size->add_option("--epsilon", spec.epsilon)->required();
  sample_size->add_option("--beta", spec.beta)->required();
  sample_size->add_option("--h", spec.support_bound, "Support bound (n_t for s-UC)")->required();

  // epsilon-bound
  std::uint64_t bound_n = 0, bound_h = 1;
  double bound_beta = 1e-4;
  auto* eps_bound = app.add_subcommand("epsilon-bound", "Smallest epsilon guaranteed by N samples");
  eps_bound->set_help_flag("--help", "Print this help message and exit");
  eps_bound->add_option("--n", bound_n)->required();
  eps_bound->add_option("--beta", bound_beta)->required();
  eps_bound->add_option("--h", bound_h)->required();

  // generate
  SynthShape shape;
  auto* generate = app.add_subcommand("generate", "Write a synthetic instance");
  generate->add_option("--generators", shape.generators)->capture_default_str();
  generate->add_option("--horizon", shape.horizon)->capture_default_str();
  generate->add_option("--outages", shape.outages)->capture_default_str();
  generate->add_option("--loads", shape.loads)->capture_default_str();
  generate->add_option("--winds", shape.winds)->capture_default_str();

  // sample
  std::string instance_path;
  ScenarioSource sample_src;
  auto* sample = app.add_subcommand("sample", "Sample forecast-error scenarios to CSV");
  sample->add_option("--instance", instance_path)->required();
  sample_src.attach(sample, 100);

  // solve
  ScenarioSource solve_src;
  bool reduce_flag = false, oracle_flag = false;
  std::optional<double> time_limit;
  std::string mps_path, mps_format = "free", solution_path;
  auto* solve_cmd = app.add_subcommand("solve", "Solve d-UC (no scenarios) or s-UC");
  solve_cmd->add_option("--instance", instance_path)->required();
  solve_src.attach(solve_cmd, 0);
  solve_cmd->add_flag("--reduce", reduce_flag, "Solve over the per-step worst scenarios only");
  solve_cmd->add_flag("--oracle", oracle_flag, "Exhaustive enumeration (n_g * n_t <= 12)");
  solve_cmd->add_option("--time-limit", time_limit, "Seconds");
  solve_cmd->add_option("--solution", solution_path, "Write the solution JSON here");
  solve_cmd->add_option("--export-mps", mps_path, "Also write the model as MPS");
  solve_cmd->add_option("--mps-format", mps_format)->check(CLI::IsMember({"fixed", "free"}))
      ->capture_default_str();

  // reduce
  std::string reduce_in;
  auto* reduce_cmd = app.add_subcommand("reduce", "Keep the per-step worst net-error scenarios");
  reduce_cmd->add_option("--scenarios", reduce_in)->required();

  // validate
  ScenarioSource validate_src;
  auto* validate = app.add_subcommand("validate", "Out-of-sample violation frequency");
  validate->add_option("--instance", instance_path)->required();
  validate->add_option("--solution", solution_path)->required();
  validate_src.attach(validate, 10000);

  // support
  ScenarioSource support_src;
  std::string support_mode = "candidates";
  double support_gap = kSupportMipGap;
  auto* support = app.add_subcommand("support", "Support scenarios by removal");
  support->add_option("--instance", instance_path)->required();
  support_src.attach(support, 50);
  support->add_option("--mode", support_mode)->check(CLI::IsMember({"candidates", "brute"}))
      ->capture_default_str();
  support->add_option("--support-gap", support_gap, "MIP gap for the removal solves")
      ->capture_default_str();

  // experiment
  std::string config_path;
  bool quiet = false;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo sweep over N");
  experiment->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  experiment->add_flag("--quiet", quiet, "No per-trial progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  if (*sample_size) {
    std::cout << required_sample_size(spec) << '\n';
  } else if (*eps_bound) {
    const EpsilonBound b = epsilon_bound(bound_n, bound_beta, bound_h);
    std::printf("%.10g\n", b.epsilon);
    if (b.vacuous) std::cerr << "note: N < h, no guarantee (bound is 1)\n";
  } else if (*generate) {
    emit_json(instance_to_json(synth_instance(shape, g.seed)), g.out);
  } else if (*sample) {
    const UCInstance inst = read_instance(instance_path);
    const ScenarioSet s = sample_src.load(inst, g.seed);
    if (g.out.empty()) write_scenarios_csv(std::cout, s);
    else write_scenarios_csv(std::filesystem::path(g.out), s);
  } else if (*solve_cmd) {
    const UCInstance inst = read_instance(instance_path);
    const ScenarioSet scen = solve_src.load(inst, g.seed);
    const std::vector<std::size_t> candidates = reduce_scenarios(scen);
    const ScenarioSet used = reduce_flag ? scen.subset(candidates) : scen;
    const SolverConfig cfg = solver_config(g, time_limit);
    const MilpModel model = used.empty() ? build_duc(inst) : build_suc(inst, used);
    if (!mps_path.empty())
      write_mps(mps_path, model, mps_format == "fixed" ? MpsFormat::kFixed : MpsFormat::kFree);
    SolveResult r;
    nlohmann::json summary;
    if (oracle_flag) {
      const OracleResult o = enumerate_oracle(inst, used, cfg);
      r = o.best;
      summary = solve_summary(r);
      summary["patterns_enumerated"] = o.patterns_enumerated;
      summary["patterns_feasible"] = o.patterns_feasible;
    } else {
      r = solve(model, cfg);
      summary = solve_summary(r);
    }
    summary["scenarios"] = scen.size();
    summary["scenarios_used"] = used.size();
    summary["reduced"] = reduce_flag;
    summary["candidate_size"] = candidates.size();
    summary["rows"] = model.num_constraints();
    summary["columns"] = model.num_variables();
    if (r.solved() && !scen.empty())
      summary["training_violations"] = empirical_violation(inst, *r.solution, scen).violated;
    if (r.solved() && !solution_path.empty()) write_solution(solution_path, *r.solution);
    emit_json(summary, g.out);
    if (!r.solved()) throw Unsolved("model status: " + std::string(status_name(r.status)));
  } else if (*reduce_cmd) {
    const ScenarioSet scen = read_scenarios_csv(reduce_in);
    const std::vector<std::size_t> keep = reduce_scenarios(scen);
    nlohmann::json summary = {{"scenarios", scen.size()}, {"candidate_size", keep.size()}};
    nlohmann::json idx = nlohmann::json::array();
    for (std::size_t i : keep) idx.push_back(i + 1);
    summary["candidate_indices"] = idx;
    if (!g.out.empty()) write_scenarios_csv(std::filesystem::path(g.out), scen.subset(keep));
    std::cout << summary.dump(2) << '\n';
  } else if (*validate) {
    const UCInstance inst = read_instance(instance_path);
    const UCSolution sol = read_solution(solution_path);
    require_compatible(inst, sol);
    const ScenarioSet test = validate_src.load(inst, g.seed);
    nlohmann::json doc = violation_to_json(empirical_violation(inst, sol, test));
    doc["test_seed"] = validate_src.path.empty() ? nlohmann::json(g.seed) : nlohmann::json(nullptr);
    doc["test_source"] = validate_src.path.empty() ? validate_src.distribution : validate_src.path;
    emit_json(doc, g.out);
    if (!g.out.empty())
      std::cout << "epsilon_hat=" << doc["epsilon_hat"].get<double>() << " (" << doc["violated"]
                << '/' << doc["tested"] << ")\n";
  } else if (*support) {
    const UCInstance inst = read_instance(instance_path);
    const ScenarioSet scen = support_src.load(inst, g.seed);
    SupportOptions opt;
    opt.mode = support_mode == "brute" ? SupportMode::kBruteForce : SupportMode::kCandidates;
    opt.solver.mip_gap = support_gap;
    opt.jobs = g.jobs;
    nlohmann::json doc = support_to_json(find_support_scenarios(inst, scen, opt));
    doc["mode"] = support_mode;
    emit_json(doc, g.out);
  } else if (*experiment) {
    ExperimentConfig cfg = read_experiment_config(config_path);
    if (app.count("--jobs") > 0) cfg.jobs = g.jobs;
    if (!g.out.empty()) cfg.output = g.out;
    if (app.count("--mip-gap") > 0) cfg.solver.mip_gap = g.mip_gap;
    const UCInstance inst = experiment_instance(cfg);
    const ExperimentReport report = run_experiment(inst, cfg, [&](const ExperimentRow& row) {
      if (quiet) return;
      std::cerr << "N=" << row.n << " trial=" << row.trial << " status=" << row.status;
      if (row.ok) std::cerr << " objective=" << row.objective << " epsilon_hat=" << row.epsilon_hat;
      if (row.support_done) std::cerr << " |S|=" << row.support_size << " |S-bar|=" << row.candidate_size;
      if (!row.message.empty()) std::cerr << " (" << row.message << ')';
      std::cerr << '\n';
    });
    write_experiment_report(cfg.output, cfg, report);
    std::cout << "wrote " << cfg.output.string() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Unsolved& e) {
    std::cerr << "ccuc: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const SolverError& e) {
    std::cerr << "ccuc: solver: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const DataError& e) {
    std::cerr << "ccuc: data: " << e.what() << '\n';
    return kDataFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ccuc: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "ccuc: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "ccuc: " << e.what() << '\n';
    return kDataFailure;
  }
}
