#include "ccuc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "ccuc/errors.hpp"
#include "ccuc/io.hpp"
#include "ccuc/sample_complexity.hpp"
#include "parallel.hpp"

namespace ccuc {

namespace {

// Distinct tags keep training and test streams apart even when N and trial
// numbers coincide.
constexpr std::uint64_t kTrainTag = 0x7472'6169'6e00'0001ULL;
constexpr std::uint64_t kTestTag = 0x7465'7374'0000'0002ULL;

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_relative() && !base.empty() ? base / p : p;
}

template <class T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("config field '") + key + "': " + e.what());
  }
}

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw DataError("config field 'trials' must be >= 1");
  if (n_grid.empty()) throw DataError("config field 'N_grid' must not be empty");
  for (std::uint64_t n : n_grid)
    if (n < 1) throw DataError("config field 'N_grid' entries must be >= 1");
  if (test_size < 1) throw DataError("config field 'test_size' must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw DataError("config field 'beta' must lie in (0, 1)");
  if (!(solver.mip_gap >= 0.0)) throw DataError("config field 'mip_gap' must be >= 0");
  if (!(support_mip_gap >= 0.0)) throw DataError("config field 'support_mip_gap' must be >= 0");
  if (jobs < 1) throw DataError("config field 'jobs' must be >= 1");
  Distribution::parse(distribution);
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc,
                                             const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw DataError("experiment config must be a JSON object");
  ExperimentConfig c;
  if (doc.contains("instance") && !doc.at("instance").is_null())
    c.instance = resolve(base_dir, get_or<std::string>(doc, "instance", ""));
  if (doc.contains("synth")) {
    const auto& s = doc.at("synth");
    c.synth.generators = get_or<std::size_t>(s, "n_g", c.synth.generators);
    c.synth.horizon = get_or<std::size_t>(s, "n_t", c.synth.horizon);
    c.synth.outages = get_or<std::size_t>(s, "n_k", c.synth.outages);
    c.synth.loads = get_or<std::size_t>(s, "n_d", c.synth.loads);
    c.synth.winds = get_or<std::size_t>(s, "n_w", c.synth.winds);
    c.synth_seed = get_or<std::uint64_t>(s, "seed", c.synth_seed);
  }
  c.distribution = get_or<std::string>(doc, "distribution", c.distribution);
  if (c.distribution.rfind("empirical:", 0) == 0)
    c.distribution = "empirical:" + resolve(base_dir, c.distribution.substr(10)).string();
  c.n_grid = get_or<std::vector<std::uint64_t>>(doc, "N_grid", c.n_grid);
  c.trials = get_or<std::size_t>(doc, "trials", c.trials);
  c.test_size = get_or<std::size_t>(doc, "test_size", c.test_size);
  c.beta = get_or<double>(doc, "beta", c.beta);
  c.seed = get_or<std::uint64_t>(doc, "seed", c.seed);
  c.solver.mip_gap = get_or<double>(doc, "mip_gap", c.solver.mip_gap);
  if (doc.contains("solver")) {
    const auto& s = doc.at("solver");
    c.solver.backend = get_or<std::string>(s, "backend", c.solver.backend);
    c.solver.mip_gap = get_or<double>(s, "mip_gap", c.solver.mip_gap);
    if (s.contains("time_limit") && !s.at("time_limit").is_null())
      c.solver.time_limit = get_or<double>(s, "time_limit", 0.0);
  }
  c.support = get_or<bool>(doc, "support", c.support);
  c.support_mip_gap = get_or<double>(doc, "support_mip_gap", c.support_mip_gap);
  c.output = resolve(base_dir, get_or<std::string>(doc, "output", c.output.string()));
  c.jobs = get_or<std::size_t>(doc, "jobs", c.jobs);
  c.validate();
  return c;
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& c) {
  nlohmann::json doc;
  doc["instance"] = c.instance ? nlohmann::json(c.instance->string()) : nlohmann::json(nullptr);
  doc["synth"] = {{"n_g", c.synth.generators}, {"n_t", c.synth.horizon},
                  {"n_k", c.synth.outages},    {"n_d", c.synth.loads},
                  {"n_w", c.synth.winds},      {"seed", c.synth_seed}};
  doc["distribution"] = c.distribution;
  doc["N_grid"] = c.n_grid;
  doc["trials"] = c.trials;
  doc["test_size"] = c.test_size;
  doc["beta"] = c.beta;
  doc["seed"] = c.seed;
  doc["mip_gap"] = c.solver.mip_gap;
  doc["solver"] = {{"backend", c.solver.backend},
                   {"mip_gap", c.solver.mip_gap},
                   {"time_limit", c.solver.time_limit ? nlohmann::json(*c.solver.time_limit)
                                                      : nlohmann::json(nullptr)}};
  doc["support"] = c.support;
  doc["support_mip_gap"] = c.support_mip_gap;
  doc["output"] = c.output.string();
  doc["jobs"] = c.jobs;
  return doc;
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_json(read_json(path), path.parent_path());
}

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t n, std::uint64_t trial) {
  return mix_seed(root ^ mix_seed(kTrainTag ^ mix_seed(n ^ mix_seed(trial))));
}

std::uint64_t test_seed(std::uint64_t root, std::uint64_t n) {
  return mix_seed(root ^ mix_seed(kTestTag ^ mix_seed(n)));
}

UCInstance experiment_instance(const ExperimentConfig& config) {
  UCInstance inst = config.instance ? read_instance(*config.instance)
                                    : synth_instance(config.synth, config.synth_seed);
  require_valid(inst);
  return inst;
}

std::vector<ExperimentAggregate> aggregate_rows(const std::vector<ExperimentRow>& rows,
                                                const std::vector<CurvePoint>& curve) {
  std::vector<ExperimentAggregate> out;
  for (const CurvePoint& point : curve) {
    ExperimentAggregate a;
    a.n = point.n;
    a.epsilon_bound = point.epsilon;
    a.bound_vacuous = point.vacuous;
    double obj_sum = 0.0, eps_sum = 0.0;
    for (const ExperimentRow& r : rows) {
      if (r.n != point.n || !r.ok) continue;
      if (a.trials_ok == 0) {
        a.objective_min = a.objective_max = r.objective;
        a.epsilon_min = a.epsilon_max = r.epsilon_hat;
      }
      ++a.trials_ok;
      obj_sum += r.objective;
      eps_sum += r.epsilon_hat;
      a.objective_min = std::min(a.objective_min, r.objective);
      a.objective_max = std::max(a.objective_max, r.objective);
      a.epsilon_min = std::min(a.epsilon_min, r.epsilon_hat);
      a.epsilon_max = std::max(a.epsilon_max, r.epsilon_hat);
      if (r.epsilon_hat > point.epsilon) ++a.above_bound;
      if (r.support_done) {
        if (a.support_trials == 0) {
          a.support_min = a.support_max = r.support_size;
          a.candidate_min = a.candidate_max = r.candidate_size;
        }
        ++a.support_trials;
        a.support_min = std::min(a.support_min, r.support_size);
        a.support_max = std::max(a.support_max, r.support_size);
        a.candidate_min = std::min(a.candidate_min, r.candidate_size);
        a.candidate_max = std::max(a.candidate_max, r.candidate_size);
        if (r.nondegenerate) ++a.nondegenerate;
      }
    }
    if (a.trials_ok > 0) {
      a.objective_mean = obj_sum / static_cast<double>(a.trials_ok);
      a.epsilon_mean = eps_sum / static_cast<double>(a.trials_ok);
      // Summation rounding must not put the mean outside its own band.
      a.objective_mean = std::clamp(a.objective_mean, a.objective_min, a.objective_max);
      a.epsilon_mean = std::clamp(a.epsilon_mean, a.epsilon_min, a.epsilon_max);
    }
    out.push_back(a);
  }
  return out;
}

ExperimentReport run_experiment(const UCInstance& inst, const ExperimentConfig& config,
                                const ExperimentProgress& progress) {
  config.validate();
  require_valid(inst);
  const Distribution dist = Distribution::parse(config.distribution);

  ExperimentReport report;
  report.horizon = inst.horizon();
  report.contingency_weights = inst.contingencies.weights;
  report.curve = theoretical_curve(inst.horizon(), config.beta, config.n_grid);

  SupportOptions support;
  support.mode = SupportMode::kCandidates;
  support.solver = config.solver;
  support.solver.mip_gap = config.support_mip_gap;
  support.jobs = 1;

  std::mutex progress_mutex;
  for (std::uint64_t n : config.n_grid) {
    const ScenarioSet test = sample_scenarios(inst, config.test_size, dist, test_seed(config.seed, n));
    std::vector<ExperimentRow> rows(config.trials);
    detail::parallel_for(config.trials, config.jobs, [&](std::size_t j) {
      ExperimentRow& row = rows[j];
      row.n = n;
      row.trial = j + 1;
      row.seed = trial_seed(config.seed, n, row.trial);
      try {
        const ScenarioSet train = sample_scenarios(inst, n, dist, row.seed);
        const SolveResult r = solve_uc(inst, train, config.solver);
        row.status = std::string(status_name(r.status));
        row.wall_time = r.wall_time;
        if (r.solved()) {
          row.objective = r.objective;
          row.epsilon_hat = empirical_violation(inst, *r.solution, test).epsilon_hat;
          row.training_violations = empirical_violation(inst, *r.solution, train).violated;
          row.ok = true;
          if (config.support) {
            const SupportReport s = find_support_scenarios(inst, train, support);
            row.support_done = true;
            row.support_size = s.support_indices.size();
            row.candidate_size = s.candidate_indices.size();
            row.nondegenerate = s.nondegenerate;
          }
        } else {
          row.message = "no solution";
        }
      } catch (const std::exception& e) {
        if (!row.ok) row.status = "error";
        row.message = e.what();
      }
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(row);
      }
    });
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  report.aggregates = aggregate_rows(report.rows, report.curve);
  return report;
}

void write_experiment_report(const std::filesystem::path& dir, const ExperimentConfig& config,
                             const ExperimentReport& report) {
  std::filesystem::create_directories(dir);

  {
    auto out = open_out(dir / "rows.csv");
    out << "N,trial,seed,status,objective,epsilon_hat,training_violations,support_size,"
           "candidate_size,nondegenerate,message\n";
    for (const ExperimentRow& r : report.rows) {
      out << r.n << ',' << r.trial << ',' << r.seed << ',' << r.status << ',';
      if (r.ok) out << num(r.objective) << ',' << num(r.epsilon_hat) << ',' << r.training_violations;
      else out << ",,";
      out << ',';
      if (r.support_done)
        out << r.support_size << ',' << r.candidate_size << ',' << (r.nondegenerate ? 1 : 0);
      else out << ",,";
      out << ',' << csv_field(r.message) << '\n';
    }
  }
  {
    auto out = open_out(dir / "timings.csv");
    out << "N,trial,wall_time\n";
    for (const ExperimentRow& r : report.rows)
      out << r.n << ',' << r.trial << ',' << num(r.wall_time) << '\n';
  }
  {
    auto out = open_out(dir / "fig2.csv");
    out << "N,trials_ok,objective_mean,objective_min,objective_max,epsilon_mean,epsilon_min,"
           "epsilon_max\n";
    for (const ExperimentAggregate& a : report.aggregates) {
      out << a.n << ',' << a.trials_ok;
      if (a.trials_ok > 0)
        out << ',' << num(a.objective_mean) << ',' << num(a.objective_min) << ','
            << num(a.objective_max) << ',' << num(a.epsilon_mean) << ',' << num(a.epsilon_min)
            << ',' << num(a.epsilon_max);
      else out << ",,,,,,";
      out << '\n';
    }
  }
  {
    auto out = open_out(dir / "fig3.csv");
    out << "N,epsilon_mean,epsilon_min,epsilon_max,epsilon_bound,bound_vacuous,trials_above_bound\n";
    for (const ExperimentAggregate& a : report.aggregates) {
      out << a.n << ',';
      if (a.trials_ok > 0)
        out << num(a.epsilon_mean) << ',' << num(a.epsilon_min) << ',' << num(a.epsilon_max);
      else out << ",,";
      out << ',' << num(a.epsilon_bound) << ',' << (a.bound_vacuous ? 1 : 0) << ','
          << a.above_bound << '\n';
    }
  }
  {
    auto out = open_out(dir / "table2.csv");
    out << "N,support_trials,support_min,support_max,candidate_min,candidate_max,"
           "nondegenerate_trials,horizon\n";
    for (const ExperimentAggregate& a : report.aggregates) {
      out << a.n << ',' << a.support_trials << ',';
      if (a.support_trials > 0)
        out << a.support_min << ',' << a.support_max << ',' << a.candidate_min << ','
            << a.candidate_max << ',' << a.nondegenerate;
      else out << ",,,,";
      out << ',' << report.horizon << '\n';
    }
  }

  nlohmann::json summary;
  nlohmann::json cfg = experiment_config_to_json(config);
  cfg.erase("jobs");  // scheduling does not change results
  cfg.erase("output");
  summary["config"] = cfg;
  summary["horizon"] = report.horizon;
  summary["contingency_weights"] = report.contingency_weights;
  summary["test_set"] = {{"shared_across_trials", true}, {"size", config.test_size}};
  nlohmann::json per_n = nlohmann::json::array();
  for (const ExperimentAggregate& a : report.aggregates) {
    per_n.push_back({{"N", a.n},
                     {"test_seed", test_seed(config.seed, a.n)},
                     {"trials_ok", a.trials_ok},
                     {"objective", {{"mean", a.objective_mean}, {"min", a.objective_min}, {"max", a.objective_max}}},
                     {"epsilon_hat", {{"mean", a.epsilon_mean}, {"min", a.epsilon_min}, {"max", a.epsilon_max}}},
                     {"epsilon_bound", a.epsilon_bound},
                     {"bound_vacuous", a.bound_vacuous},
                     {"trials_above_bound", a.above_bound},
                     {"support_trials", a.support_trials},
                     {"support", {{"min", a.support_min}, {"max", a.support_max}}},
                     {"candidates", {{"min", a.candidate_min}, {"max", a.candidate_max}}},
                     {"nondegenerate_trials", a.nondegenerate}});
  }
  summary["per_N"] = per_n;
  std::size_t failed = 0;
  for (const ExperimentRow& r : report.rows)
    if (!r.ok || !r.message.empty()) ++failed;
  summary["rows"] = report.rows.size();
  summary["failed_rows"] = failed;
  write_json(dir / "summary.json", summary);
}

}  // namespace ccuc
