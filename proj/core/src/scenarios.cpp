#include "ccuc/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "ccuc/errors.hpp"

namespace ccuc {

double TrajectoryView::total_load_error(std::size_t t) const {
  double s = 0.0;
  for (std::size_t j = 0; j < loads; ++j) s += load_error[t * loads + j];
  return s;
}

double TrajectoryView::total_wind_error(std::size_t t) const {
  double s = 0.0;
  for (std::size_t w = 0; w < winds; ++w) s += wind_error[t * winds + w];
  return s;
}

ScenarioSet::ScenarioSet(std::size_t count, std::size_t horizon, std::size_t loads,
                         std::size_t winds)
    : horizon_(horizon),
      loads_(loads),
      winds_(winds),
      load_error_(count, horizon, loads),
      wind_error_(count, horizon, winds) {}

TrajectoryView ScenarioSet::trajectory(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("scenario index");
  return {horizon_, loads_, winds_, load_error_.slab(i), wind_error_.slab(i)};
}

ScenarioSet ScenarioSet::subset(std::span<const std::size_t> indices) const {
  ScenarioSet out(indices.size(), horizon_, loads_, winds_);
  out.seed = seed;
  out.descriptor = descriptor;
  for (std::size_t n = 0; n < indices.size(); ++n) {
    const std::size_t i = indices[n];
    if (i >= size()) throw std::out_of_range("scenario index");
    for (std::size_t t = 0; t < horizon_; ++t) {
      std::ranges::copy(load_error_.fiber(i, t), out.load_error_.fiber(n, t).begin());
      std::ranges::copy(wind_error_.fiber(i, t), out.wind_error_.fiber(n, t).begin());
    }
  }
  return out;
}

ScenarioSet ScenarioSet::without(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("scenario index");
  std::vector<std::size_t> keep;
  keep.reserve(size() - 1);
  for (std::size_t i = 0; i < size(); ++i)
    if (i != index) keep.push_back(i);
  return subset(keep);
}

namespace {

double parse_number(const std::string& text, const std::string& context) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw DataError("not a number in " + context + ": '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

Distribution Distribution::parse(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos)
    throw DataError("distribution descriptor needs '<kind>:<parameter>': " + descriptor);
  const std::string kind = descriptor.substr(0, colon);
  const std::string rest = descriptor.substr(colon + 1);

  Distribution d;
  if (kind == "empirical") {
    if (rest.empty()) throw DataError("empirical distribution needs a path");
    d.kind = Kind::kEmpirical;
    d.path = rest;
    return d;
  }
  if (kind == "gaussian") {
    d.kind = Kind::kGaussian;
  } else if (kind == "uniform") {
    d.kind = Kind::kUniform;
  } else {
    throw DataError("unknown distribution '" + kind + "'");
  }
  const auto params = split(rest, ':');
  if (params.empty() || params.size() > 2)
    throw DataError("expected '" + kind + ":<scale>[:<rho>]', got " + descriptor);
  d.scale = parse_number(params[0], descriptor);
  if (params.size() == 2) d.correlation = parse_number(params[1], descriptor);
  if (!(d.scale >= 0.0)) throw DataError("distribution scale must be >= 0");
  if (!(d.correlation > -1.0 && d.correlation < 1.0))
    throw DataError("distribution correlation must lie in (-1, 1)");
  return d;
}

std::string Distribution::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kGaussian: os << "gaussian:" << scale; break;
    case Kind::kUniform: os << "uniform:" << scale; break;
    case Kind::kEmpirical: return "empirical:" + path.string();
  }
  if (correlation != 0.0) os << ':' << correlation;
  return os.str();
}

std::uint64_t mix_seed(std::uint64_t value) {
  // splitmix64 finalizer
  value += 0x9E3779B97F4A7C15ULL;
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
  return value ^ (value >> 31);
}

void require_compatible(const UCInstance& inst, const ScenarioSet& scen) {
  if (scen.empty()) return;
  if (scen.horizon() != inst.horizon() || scen.loads() != inst.forecasts.loads() ||
      scen.winds() != inst.forecasts.winds()) {
    std::ostringstream os;
    os << "scenario dimensions (n_t=" << scen.horizon() << ", n_d=" << scen.loads()
       << ", n_w=" << scen.winds() << ") do not match the instance (n_t=" << inst.horizon()
       << ", n_d=" << inst.forecasts.loads() << ", n_w=" << inst.forecasts.winds() << ")";
    throw DataError(os.str());
  }
}

ScenarioSet sample_scenarios(const UCInstance& inst, std::size_t count,
                             const Distribution& dist, std::uint64_t seed) {
  const std::size_t nt = inst.horizon();
  const std::size_t nd = inst.forecasts.loads();
  const std::size_t nw = inst.forecasts.winds();
  const Matrix<double>& dhat = inst.forecasts.load;
  const Matrix<double>& what = inst.forecasts.wind;

  ScenarioSet out(count, nt, nd, nw);
  out.seed = seed;
  out.descriptor = dist.describe();

  if (dist.kind == Distribution::Kind::kEmpirical) {
    const ScenarioSet pool = read_scenarios_csv(dist.path);
    if (pool.empty()) throw DataError("empirical scenario file is empty: " + dist.path.string());
    require_compatible(inst, pool);
    for (std::size_t i = 0; i < count; ++i) {
      std::mt19937_64 rng(seed ^ mix_seed(i));
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
      for (std::size_t t = 0; t < nt; ++t) {
        for (std::size_t j = 0; j < nd; ++j) out.load(i, t, j) = pool.load(pick, t, j);
        for (std::size_t w = 0; w < nw; ++w) out.wind(i, t, w) = pool.wind(pick, t, w);
      }
    }
    return out;
  }

  const double rho = dist.correlation;
  const double innovation = std::sqrt(1.0 - rho * rho);
  const bool gaussian = dist.kind == Distribution::Kind::kGaussian;
  // Unit-variance uniform: U(-sqrt3, sqrt3); scaled so the marginal spans +/- scale.
  const double root3 = std::sqrt(3.0);

  std::vector<double> state(nd + nw);
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed ^ mix_seed(i));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> flat(-root3, root3);
    auto draw = [&] { return gaussian ? normal(rng) : flat(rng); };

    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t c = 0; c < nd + nw; ++c)
        state[c] = t == 0 ? draw() : rho * state[c] + innovation * draw();
      for (std::size_t j = 0; j < nd; ++j) {
        const double spread = gaussian ? dist.scale : dist.scale / root3;
        const double e = spread * dhat(t, j) * state[j];
        out.load(i, t, j) = std::max(e, -dhat(t, j)) + 0.0;  // no negative zeros
      }
      for (std::size_t w = 0; w < nw; ++w) {
        const double spread = gaussian ? dist.scale : dist.scale / root3;
        const double e = spread * what(t, w) * state[nd + w];
        out.wind(i, t, w) = std::max(e, -what(t, w)) + 0.0;
      }
    }
  }
  return out;
}

double net_error(const ScenarioSet& scen, std::size_t i, std::size_t t) {
  if (i >= scen.size() || t >= scen.horizon()) throw std::out_of_range("net_error index");
  double s = 0.0;
  for (std::size_t j = 0; j < scen.loads(); ++j) s += scen.load(i, t, j);
  for (std::size_t w = 0; w < scen.winds(); ++w) s -= scen.wind(i, t, w);
  return s;
}

std::vector<std::size_t> worst_per_step(const ScenarioSet& scen) {
  std::vector<std::size_t> worst;
  if (scen.empty()) return worst;
  worst.reserve(scen.horizon());
  for (std::size_t t = 0; t < scen.horizon(); ++t) {
    std::size_t best = 0;
    double best_value = net_error(scen, 0, t);
    for (std::size_t i = 1; i < scen.size(); ++i) {
      const double v = net_error(scen, i, t);
      if (v > best_value) {
        best = i;
        best_value = v;
      }
    }
    worst.push_back(best);
  }
  return worst;
}

std::vector<std::size_t> reduce_scenarios(const ScenarioSet& scen) {
  std::vector<std::size_t> idx = worst_per_step(scen);
  std::ranges::sort(idx);
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

void write_scenarios_csv(std::ostream& out, const ScenarioSet& scen) {
  out << "scenario,t";
  for (std::size_t j = 0; j < scen.loads(); ++j) out << ",d_" << j + 1;
  for (std::size_t w = 0; w < scen.winds(); ++w) out << ",w_" << w + 1;
  out << '\n';
  char buf[64];
  auto put = [&](double v) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out << ',' << std::string_view(buf, end - buf);
  };
  for (std::size_t i = 0; i < scen.size(); ++i) {
    for (std::size_t t = 0; t < scen.horizon(); ++t) {
      out << i + 1 << ',' << t + 1;
      for (std::size_t j = 0; j < scen.loads(); ++j) put(scen.load(i, t, j));
      for (std::size_t w = 0; w < scen.winds(); ++w) put(scen.wind(i, t, w));
      out << '\n';
    }
  }
}

void write_scenarios_csv(const std::filesystem::path& path, const ScenarioSet& scen) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_scenarios_csv(out, scen);
}

ScenarioSet read_scenarios_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("scenario file: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  if (header.size() < 2 || header[0] != "scenario" || header[1] != "t")
    throw DataError("scenario file: header must start with 'scenario,t'");
  std::size_t nd = 0, nw = 0;
  for (std::size_t c = 2; c < header.size(); ++c) {
    const std::string& h = header[c];
    const bool load = h.rfind("d_", 0) == 0;
    const bool wind = h.rfind("w_", 0) == 0;
    if (load && nw == 0) {
      if (h != "d_" + std::to_string(nd + 1)) throw DataError("scenario file: bad column " + h);
      ++nd;
    } else if (wind) {
      if (h != "w_" + std::to_string(nw + 1)) throw DataError("scenario file: bad column " + h);
      ++nw;
    } else {
      throw DataError("scenario file: unexpected column " + h);
    }
  }

  struct Row {
    std::size_t scenario, t;
    std::vector<double> values;
  };
  std::vector<Row> rows;
  std::size_t max_s = 0, max_t = 0, lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    const std::string where = "line " + std::to_string(lineno);
    if (cells.size() != header.size()) throw DataError("scenario file: wrong column count at " + where);
    Row r;
    const double s = parse_number(cells[0], where);
    const double t = parse_number(cells[1], where);
    if (s < 1 || t < 1 || s != std::floor(s) || t != std::floor(t))
      throw DataError("scenario file: scenario and t must be positive integers at " + where);
    r.scenario = static_cast<std::size_t>(s) - 1;
    r.t = static_cast<std::size_t>(t) - 1;
    for (std::size_t c = 2; c < cells.size(); ++c) r.values.push_back(parse_number(cells[c], where));
    max_s = std::max(max_s, r.scenario + 1);
    max_t = std::max(max_t, r.t + 1);
    rows.push_back(std::move(r));
  }

  ScenarioSet scen(max_s, max_t, nd, nw);
  if (rows.size() != max_s * max_t)
    throw DataError("scenario file: expected one row per (scenario, t) pair");
  std::vector<char> seen(max_s * max_t, 0);
  for (const Row& r : rows) {
    char& mark = seen[r.scenario * max_t + r.t];
    if (mark) throw DataError("scenario file: duplicate (scenario, t) row");
    mark = 1;
    for (std::size_t j = 0; j < nd; ++j) scen.load(r.scenario, r.t, j) = r.values[j];
    for (std::size_t w = 0; w < nw; ++w) scen.wind(r.scenario, r.t, w) = r.values[nd + w];
  }
  return scen;
}

ScenarioSet read_scenarios_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  ScenarioSet scen = read_scenarios_csv(in);
  scen.descriptor = "file";
  return scen;
}

}  // namespace ccuc
