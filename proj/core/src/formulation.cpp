#include "ccuc/formulation.hpp"

#include <algorithm>
#include <cmath>

#include "ccuc/errors.hpp"

namespace ccuc {

namespace {

std::string ti(std::size_t t, std::size_t i) {
  return "[t=" + std::to_string(t + 1) + ",i=" + std::to_string(i + 1) + "]";
}
std::string tki(std::size_t t, std::size_t k, std::size_t i) {
  return "[t=" + std::to_string(t + 1) + ",k=" + std::to_string(k) +
         ",i=" + std::to_string(i + 1) + "]";
}

struct Columns {
  Matrix<int> z, u, v, r;
  Tensor3<int> g;
};

Columns declare_columns(const UCInstance& inst, MilpModel& m) {
  const std::size_t nt = inst.horizon();
  const std::size_t ng = inst.generators();
  const std::size_t nc = inst.cases();
  const GeneratorFleet& f = inst.fleet;
  const auto& alpha = inst.contingencies.weights;

  Columns c{Matrix<int>(nt, ng), Matrix<int>(nt, ng), Matrix<int>(nt, ng),
            Matrix<int>(nt, ng), Tensor3<int>(nt, nc, ng)};
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t i = 0; i < ng; ++i)
      c.z(t, i) = m.add_variable(commit_name(t, i), VarKind::kBinary, 0, 1, f.no_load_cost[i]);
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t i = 0; i < ng; ++i)
      c.u(t, i) = m.add_variable(startup_name(t, i), VarKind::kBinary, 0, 1, f.startup_cost[i]);
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t i = 0; i < ng; ++i)
      c.v(t, i) = m.add_variable(shutdown_name(t, i), VarKind::kBinary, 0, 1, f.shutdown_cost[i]);
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t k = 0; k < nc; ++k)
      for (std::size_t i = 0; i < ng; ++i)
        c.g(t, k, i) = m.add_variable(dispatch_name(t, k, i), VarKind::kContinuous, 0, kInf,
                                      alpha[k] * f.generation_cost[i]);
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t i = 0; i < ng; ++i)
      c.r(t, i) = m.add_variable(reserve_name(t, i), VarKind::kContinuous, 0, kInf, f.reserve_cost[i]);
  return c;
}

std::vector<LinearTerm> supply(const Columns& c, std::size_t t, std::size_t k, std::size_t ng) {
  std::vector<LinearTerm> terms;
  terms.reserve(ng);
  for (std::size_t i = 0; i < ng; ++i) terms.push_back({c.g(t, k, i), 1.0});
  return terms;
}

}  // namespace

std::string commit_name(std::size_t t, std::size_t i) { return "z" + ti(t, i); }
std::string startup_name(std::size_t t, std::size_t i) { return "u" + ti(t, i); }
std::string shutdown_name(std::size_t t, std::size_t i) { return "v" + ti(t, i); }
std::string dispatch_name(std::size_t t, std::size_t k, std::size_t i) { return "g" + tki(t, k, i); }
std::string reserve_name(std::size_t t, std::size_t i) { return "r" + ti(t, i); }

MilpModel build_duc(const UCInstance& inst, const FormulationOptions& options) {
  require_valid(inst);
  const std::size_t nt = inst.horizon();
  const std::size_t ng = inst.generators();
  const std::size_t nc = inst.cases();
  const GeneratorFleet& f = inst.fleet;
  const Matrix<int>& a = inst.contingencies.availability;
  using S = Sense;

  MilpModel m;
  const Columns c = declare_columns(inst, m);

  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t k = 0; k < nc; ++k)
      m.add_constraint("balance[t=" + std::to_string(t + 1) + ",k=" + std::to_string(k) + "]",
                       supply(c, t, k, ng), S::kGreaterEqual, inst.forecasts.net_demand(t));

  // Ramp limits per contingency trajectory; the step before t=1 is a^k o g0.
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t k = 0; k < nc; ++k) {
      for (std::size_t i = 0; i < ng; ++i) {
        const double avail = a(k, i);
        std::vector<LinearTerm> delta{{c.g(t, k, i), 1.0}};
        double offset = 0.0;
        if (t == 0) {
          offset = avail * f.initial_output[i];
        } else {
          delta.push_back({c.g(t - 1, k, i), -1.0});
        }
        m.add_constraint("ramp_lo" + tki(t, k, i), delta, S::kGreaterEqual,
                         avail * f.ramp_down[i] + offset);
        m.add_constraint("ramp_hi" + tki(t, k, i), delta, S::kLessEqual,
                         avail * f.ramp_up[i] + offset);
      }
    }
  }

  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t k = 0; k < nc; ++k) {
      for (std::size_t i = 0; i < ng; ++i) {
        const double avail = a(k, i);
        const int g = c.g(t, k, i);
        const int base = c.g(t, 0, i);
        const int r = c.r(t, i);
        m.add_constraint("contingency_lo" + tki(t, k, i),
                         {{g, 1.0}, {base, -avail}, {r, avail}}, S::kGreaterEqual, 0.0);
        m.add_constraint("contingency_hi" + tki(t, k, i),
                         {{g, 1.0}, {base, -avail}, {r, -avail}}, S::kLessEqual, 0.0);
        if (options.include_redundant_capacity) {
          const int z = c.z(t, i);
          m.add_constraint("contingency_cap_lo" + tki(t, k, i),
                           {{g, 1.0}, {z, -avail * f.min_output[i]}}, S::kGreaterEqual, 0.0);
          m.add_constraint("contingency_cap_hi" + tki(t, k, i),
                           {{g, 1.0}, {z, -avail * f.max_output[i]}}, S::kLessEqual, 0.0);
        }
      }
    }
  }

  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t i = 0; i < ng; ++i) {
      const int z = c.z(t, i);
      const int base = c.g(t, 0, i);
      const int r = c.r(t, i);
      m.add_constraint("capacity_lo" + ti(t, i), {{base, 1.0}, {z, -f.min_output[i]}},
                       S::kGreaterEqual, 0.0);
      m.add_constraint("capacity_hi" + ti(t, i), {{base, 1.0}, {z, -f.max_output[i]}},
                       S::kLessEqual, 0.0);
      m.add_constraint("reserve_lo" + ti(t, i), {{base, 1.0}, {r, -1.0}, {z, -f.min_output[i]}},
                       S::kGreaterEqual, 0.0);
      m.add_constraint("reserve_hi" + ti(t, i), {{base, 1.0}, {r, 1.0}, {z, -f.max_output[i]}},
                       S::kLessEqual, 0.0);
    }
  }

  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t i = 0; i < ng; ++i) {
      const int z = c.z(t, i);
      // z^{t-1} - z^t + u^t >= 0 and z^t - z^{t-1} + v^t >= 0, with z^0 given.
      std::vector<LinearTerm> up{{z, -1.0}, {c.u(t, i), 1.0}};
      std::vector<LinearTerm> down{{z, 1.0}, {c.v(t, i), 1.0}};
      double up_rhs = 0.0;
      double down_rhs = 0.0;
      if (t == 0) {
        up_rhs = -f.initial_on[i];
        down_rhs = f.initial_on[i];
      } else {
        up.push_back({c.z(t - 1, i), 1.0});
        down.push_back({c.z(t - 1, i), -1.0});
      }
      m.add_constraint("startup" + ti(t, i), std::move(up), S::kGreaterEqual, up_rhs);
      m.add_constraint("shutdown" + ti(t, i), std::move(down), S::kGreaterEqual, down_rhs);
    }
  }

  // Minimum up/down windows for t in [2, n_t], clipped at the horizon.
  for (std::size_t t = 1; t < nt; ++t) {
    for (std::size_t i = 0; i < ng; ++i) {
      const int now = c.z(t, i);
      const int before = c.z(t - 1, i);
      const std::size_t on_end = std::min(t + static_cast<std::size_t>(f.min_up[i]) - 1, nt - 1);
      for (std::size_t s = t + 1; s <= on_end; ++s)
        m.add_constraint("min_on[t=" + std::to_string(t + 1) + ",i=" + std::to_string(i + 1) +
                             ",to=" + std::to_string(s + 1) + "]",
                         {{now, 1.0}, {before, -1.0}, {c.z(s, i), -1.0}}, S::kLessEqual, 0.0);
      const std::size_t off_end = std::min(t + static_cast<std::size_t>(f.min_down[i]) - 1, nt - 1);
      for (std::size_t s = t + 1; s <= off_end; ++s)
        m.add_constraint("min_off[t=" + std::to_string(t + 1) + ",i=" + std::to_string(i + 1) +
                             ",to=" + std::to_string(s + 1) + "]",
                         {{before, 1.0}, {now, -1.0}, {c.z(s, i), 1.0}}, S::kLessEqual, 1.0);
    }
  }
  return m;
}

MilpModel build_suc(const UCInstance& inst, const ScenarioSet& scen,
                    const FormulationOptions& options) {
  require_compatible(inst, scen);
  MilpModel m = build_duc(inst, options);
  const std::size_t nt = inst.horizon();
  const std::size_t ng = inst.generators();
  const std::size_t nc = inst.cases();

  std::vector<std::vector<LinearTerm>> rows(nt * nc);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t k = 0; k < nc; ++k) {
      auto& terms = rows[t * nc + k];
      for (std::size_t i = 0; i < ng; ++i) terms.push_back({m.find(dispatch_name(t, k, i)), 1.0});
    }
  }
  for (std::size_t n = 0; n < scen.size(); ++n) {
    for (std::size_t t = 0; t < nt; ++t) {
      const double demand = inst.forecasts.net_demand(t) + net_error(scen, n, t);
      for (std::size_t k = 0; k < nc; ++k)
        m.add_constraint("U[i=" + std::to_string(n + 1) + ",t=" + std::to_string(t + 1) +
                             ",k=" + std::to_string(k) + "]",
                         rows[t * nc + k], Sense::kGreaterEqual, demand);
    }
  }
  return m;
}

UCSolution extract_solution(const MilpModel& model, std::span<const double> values) {
  if (values.size() != model.num_variables())
    throw SolverError("extract_solution: value vector does not match the model");

  struct Entry {
    char symbol;
    std::size_t t, k, i;
    double value;
  };
  std::vector<Entry> entries;
  entries.reserve(values.size());
  std::size_t nt = 0, nc = 0, ng = 0;
  ParsedName parsed;
  for (std::size_t col = 0; col < values.size(); ++col) {
    if (!parse_indexed_name(model.variables()[col].name, parsed) || parsed.symbol.size() != 1)
      continue;
    const char sym = parsed.symbol.front();
    if (std::string_view("zuvgr").find(sym) == std::string_view::npos) continue;
    auto get = [&](const char* key) -> long long {
      auto it = parsed.index.find(key);
      return it == parsed.index.end() ? -1 : it->second;
    };
    const long long t = get("t");
    const long long i = get("i");
    const long long k = sym == 'g' ? get("k") : 0;
    if (t < 1 || i < 1 || k < 0) throw SolverError("malformed column name " + parsed.symbol);
    entries.push_back({sym, static_cast<std::size_t>(t - 1), static_cast<std::size_t>(k),
                       static_cast<std::size_t>(i - 1), values[col]});
    nt = std::max(nt, static_cast<std::size_t>(t));
    ng = std::max(ng, static_cast<std::size_t>(i));
    nc = std::max(nc, static_cast<std::size_t>(k + 1));
  }

  UCSolution sol;
  sol.commit = Matrix<int>(nt, ng);
  sol.startup = Matrix<int>(nt, ng);
  sol.shutdown = Matrix<int>(nt, ng);
  sol.reserve = Matrix<double>(nt, ng);
  sol.dispatch = Tensor3<double>(nt, nc, ng);
  auto bit = [](double v) { return v > 0.5 ? 1 : 0; };
  for (const Entry& e : entries) {
    switch (e.symbol) {
      case 'z': sol.commit(e.t, e.i) = bit(e.value); break;
      case 'u': sol.startup(e.t, e.i) = bit(e.value); break;
      case 'v': sol.shutdown(e.t, e.i) = bit(e.value); break;
      case 'r': sol.reserve(e.t, e.i) = e.value; break;
      case 'g': sol.dispatch(e.t, e.k, e.i) = e.value; break;
    }
  }
  return sol;
}

}  // namespace ccuc
