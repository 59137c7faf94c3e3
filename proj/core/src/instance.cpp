#include "ccuc/instance.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ccuc/errors.hpp"

namespace ccuc {

double ForecastSeries::total_load(std::size_t t) const {
  auto r = load.row(t);
  return std::accumulate(r.begin(), r.end(), 0.0);
}

double ForecastSeries::total_wind(std::size_t t) const {
  if (wind.cols() == 0) return 0.0;
  auto r = wind.row(t);
  return std::accumulate(r.begin(), r.end(), 0.0);
}

UCSolution UCSolution::zeros(const UCInstance& inst) {
  const std::size_t nt = inst.horizon();
  const std::size_t ng = inst.generators();
  UCSolution sol;
  sol.commit = Matrix<int>(nt, ng);
  sol.startup = Matrix<int>(nt, ng);
  sol.shutdown = Matrix<int>(nt, ng);
  sol.dispatch = Tensor3<double>(nt, inst.cases(), ng);
  sol.reserve = Matrix<double>(nt, ng);
  return sol;
}

namespace {

class Collector {
 public:
  void add(std::string field, std::string rule) {
    out_.push_back({std::move(field), std::move(rule)});
  }
  template <typename... Args>
  void addf(std::string field, Args&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    add(std::move(field), os.str());
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

void check_fleet(const GeneratorFleet& f, Collector& out) {
  const std::size_t ng = f.size();
  if (ng == 0) out.add("g_hi", "fleet must contain at least one generator");

  auto len = [&](const char* name, std::size_t n) {
    if (n != ng) out.addf(name, "length ", n, " != n_g ", ng);
    return n == ng;
  };
  bool shaped = len("c_g", f.generation_cost.size());
  shaped &= len("c_z", f.no_load_cost.size());
  shaped &= len("c_r", f.reserve_cost.size());
  shaped &= len("c_u", f.startup_cost.size());
  shaped &= len("c_v", f.shutdown_cost.size());
  shaped &= len("g_lo", f.min_output.size());
  shaped &= len("ramp_lo", f.ramp_down.size());
  shaped &= len("ramp_hi", f.ramp_up.size());
  shaped &= len("min_on", f.min_up.size());
  shaped &= len("min_off", f.min_down.size());
  shaped &= len("z0", f.initial_on.size());
  shaped &= len("g0", f.initial_output.size());
  if (!shaped) return;

  const std::pair<const char*, const std::vector<double>*> costs[] = {
      {"c_g", &f.generation_cost}, {"c_z", &f.no_load_cost},
      {"c_r", &f.reserve_cost},    {"c_u", &f.startup_cost},
      {"c_v", &f.shutdown_cost}};

  for (std::size_t i = 0; i < ng; ++i) {
    const std::size_t gen = i + 1;
    for (const auto& [name, vec] : costs) {
      const double c = (*vec)[i];
      if (!std::isfinite(c) || c < 0.0)
        out.addf(name, "cost must be finite and nonnegative at generator ", gen);
    }
    const double lo = f.min_output[i];
    const double hi = f.max_output[i];
    if (!std::isfinite(lo) || !std::isfinite(hi))
      out.addf("g_lo/g_hi", "bounds must be finite at generator ", gen);
    if (lo < 0.0) out.addf("g_lo", "g_lo >= 0 violated at generator ", gen);
    if (lo > hi) out.addf("g_lo/g_hi", "bound ordering g_lo <= g_hi violated at generator ", gen);
    if (!(f.ramp_down[i] <= f.ramp_up[i]))
      out.addf("ramp_lo/ramp_hi", "ramp ordering ramp_lo <= ramp_hi violated at generator ", gen);
    if (f.min_up[i] < 1) out.addf("min_on", "min_on >= 1 violated at generator ", gen);
    if (f.min_down[i] < 1) out.addf("min_off", "min_off >= 1 violated at generator ", gen);

    const int z0 = f.initial_on[i];
    const double g0 = f.initial_output[i];
    if (z0 != 0 && z0 != 1) {
      out.addf("z0", "initial state must be 0 or 1 at generator ", gen);
    } else if (z0 == 0 && g0 != 0.0) {
      out.addf("g0", "g0 must be 0 for an initially off generator ", gen);
    } else if (z0 == 1 && (g0 < lo || g0 > hi)) {
      out.addf("g0", "g0 must lie in [g_lo, g_hi] for an initially on generator ", gen);
    }
  }
}

void check_contingencies(const ContingencySet& c, std::size_t ng, Collector& out) {
  const Matrix<int>& a = c.availability;
  if (a.rows() == 0) {
    out.add("availability", "base case row (k = 0) is missing");
    return;
  }
  if (a.cols() != ng) {
    out.addf("availability", "row width ", a.cols(), " != n_g ", ng);
    return;
  }
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < ng; ++i)
      if (a(k, i) != 0 && a(k, i) != 1)
        out.addf("availability", "entries must be 0 or 1 (k = ", k, ", generator ", i + 1, ")");

  for (std::size_t i = 0; i < ng; ++i) {
    if (a(0, i) != 1) {
      out.add("availability", "base-case availability a^0 must be all ones");
      break;
    }
  }
  for (std::size_t k = 1; k < a.rows(); ++k) {
    bool differs = false;
    for (std::size_t i = 0; i < ng; ++i) differs |= a(k, i) != 1;
    if (!differs) out.addf("availability", "contingency ", k, " equals the base case");
  }

  if (c.weights.size() != a.rows()) {
    out.addf("weights", "length ", c.weights.size(), " != n_k + 1 = ", a.rows());
    return;
  }
  for (std::size_t k = 0; k < c.weights.size(); ++k)
    if (!std::isfinite(c.weights[k]) || c.weights[k] < 0.0)
      out.addf("weights", "alpha_", k, " must be finite and nonnegative");
}

void check_forecasts(const ForecastSeries& fc, Collector& out) {
  if (fc.horizon() < 1) out.add("d_hat", "n_t >= 1 violated");
  if (fc.wind.cols() > 0 && fc.wind.rows() != fc.horizon())
    out.addf("w_hat", "rows ", fc.wind.rows(), " != n_t ", fc.horizon());
  for (double v : fc.load.data())
    if (!std::isfinite(v) || v < 0.0) {
      out.add("d_hat", "load forecasts must be finite and nonnegative");
      break;
    }
  for (double v : fc.wind.data())
    if (!std::isfinite(v) || v < 0.0) {
      out.add("w_hat", "wind forecasts must be finite and nonnegative");
      break;
    }
}

}  // namespace

std::vector<Violation> validate_instance(const UCInstance& inst) {
  Collector out;
  check_fleet(inst.fleet, out);
  check_contingencies(inst.contingencies, inst.generators(), out);
  check_forecasts(inst.forecasts, out);
  return out.take();
}

void require_valid(const UCInstance& inst) {
  const auto issues = validate_instance(inst);
  if (!issues.empty())
    throw DataError("invalid instance: " + issues.front().field + ": " +
                    issues.front().rule);
}

void require_compatible(const UCInstance& inst, const UCSolution& sol) {
  const std::size_t nt = inst.horizon();
  const std::size_t ng = inst.generators();
  auto shaped = [&](const auto& m) { return m.rows() == nt && m.cols() == ng; };
  if (!shaped(sol.commit) || !shaped(sol.startup) || !shaped(sol.shutdown) ||
      !shaped(sol.reserve) || sol.dispatch.dim0() != nt ||
      sol.dispatch.dim1() != inst.cases() || sol.dispatch.dim2() != ng) {
    throw DataError("solution dimensions do not match the instance");
  }
}

double evaluate_cost(const UCInstance& inst, const UCSolution& sol) {
  require_compatible(inst, sol);
  const GeneratorFleet& f = inst.fleet;
  const auto& alpha = inst.contingencies.weights;
  double total = 0.0;
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    for (std::size_t i = 0; i < inst.generators(); ++i) {
      total += f.no_load_cost[i] * sol.commit(t, i);
      total += f.startup_cost[i] * sol.startup(t, i);
      total += f.shutdown_cost[i] * sol.shutdown(t, i);
      total += f.reserve_cost[i] * sol.reserve(t, i);
      for (std::size_t k = 0; k < inst.cases(); ++k)
        total += alpha[k] * f.generation_cost[i] * sol.dispatch(t, k, i);
    }
  }
  return total;
}

}  // namespace ccuc
