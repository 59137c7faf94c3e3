#include "ccuc/io.hpp"

#include <fstream>

#include "ccuc/errors.hpp"

namespace ccuc {

using nlohmann::json;

namespace {

template <typename T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    rows.push_back(json(std::vector<T>(row.begin(), row.end())));
  }
  return rows;
}

template <typename T>
Matrix<T> matrix_from_json(const json& doc, const char* field) {
  if (!doc.is_array()) throw DataError(std::string(field) + ": expected an array of rows");
  const std::size_t rows = doc.size();
  const std::size_t cols = rows == 0 ? 0 : doc.front().size();
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = doc[r];
    if (!row.is_array() || row.size() != cols)
      throw DataError(std::string(field) + ": ragged row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c].get<T>();
  }
  return m;
}

template <typename T>
std::vector<T> vector_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw DataError(std::string("missing field '") + key + "'");
  return obj.at(key).get<std::vector<T>>();
}

const json& object_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_object())
    throw DataError(std::string("missing object '") + key + "'");
  return obj.at(key);
}

void check_count(const json& doc, const char* key, std::size_t actual) {
  if (doc.contains(key) && doc.at(key).get<std::size_t>() != actual)
    throw DataError(std::string(key) + " = " + std::to_string(doc.at(key).get<std::size_t>()) +
                    " disagrees with the data (" + std::to_string(actual) + ")");
}

}  // namespace

json instance_to_json(const UCInstance& inst) {
  const GeneratorFleet& f = inst.fleet;
  json fleet = {
      {"c_g", f.generation_cost}, {"c_z", f.no_load_cost},   {"c_r", f.reserve_cost},
      {"c_u", f.startup_cost},    {"c_v", f.shutdown_cost},  {"g_lo", f.min_output},
      {"g_hi", f.max_output},     {"ramp_lo", f.ramp_down},  {"ramp_hi", f.ramp_up},
      {"min_on", f.min_up},       {"min_off", f.min_down},   {"z0", f.initial_on},
      {"g0", f.initial_output},
  };
  return {
      {"n_g", inst.generators()},
      {"n_t", inst.horizon()},
      {"n_k", inst.contingencies.outages()},
      {"n_d", inst.forecasts.loads()},
      {"n_w", inst.forecasts.winds()},
      {"fleet", fleet},
      {"contingencies",
       {{"availability", matrix_to_json(inst.contingencies.availability)},
        {"weights", inst.contingencies.weights}}},
      {"forecasts",
       {{"d_hat", matrix_to_json(inst.forecasts.load)},
        {"w_hat", matrix_to_json(inst.forecasts.wind)}}},
  };
}

UCInstance instance_from_json(const json& doc) {
  try {
    UCInstance inst;
    const json& fl = object_field(doc, "fleet");
    GeneratorFleet& f = inst.fleet;
    f.generation_cost = vector_field<double>(fl, "c_g");
    f.no_load_cost = vector_field<double>(fl, "c_z");
    f.reserve_cost = vector_field<double>(fl, "c_r");
    f.startup_cost = vector_field<double>(fl, "c_u");
    f.shutdown_cost = vector_field<double>(fl, "c_v");
    f.min_output = vector_field<double>(fl, "g_lo");
    f.max_output = vector_field<double>(fl, "g_hi");
    f.ramp_down = vector_field<double>(fl, "ramp_lo");
    f.ramp_up = vector_field<double>(fl, "ramp_hi");
    f.min_up = vector_field<int>(fl, "min_on");
    f.min_down = vector_field<int>(fl, "min_off");
    f.initial_on = vector_field<int>(fl, "z0");
    f.initial_output = vector_field<double>(fl, "g0");

    const json& ct = object_field(doc, "contingencies");
    inst.contingencies.availability = matrix_from_json<int>(ct.at("availability"), "availability");
    inst.contingencies.weights = vector_field<double>(ct, "weights");

    const json& fc = object_field(doc, "forecasts");
    inst.forecasts.load = matrix_from_json<double>(fc.at("d_hat"), "d_hat");
    if (fc.contains("w_hat"))
      inst.forecasts.wind = matrix_from_json<double>(fc.at("w_hat"), "w_hat");
    if (inst.forecasts.wind.rows() == 0)
      inst.forecasts.wind = Matrix<double>(inst.forecasts.horizon(), 0);

    check_count(doc, "n_g", inst.generators());
    check_count(doc, "n_t", inst.horizon());
    check_count(doc, "n_k", inst.contingencies.outages());
    check_count(doc, "n_d", inst.forecasts.loads());
    check_count(doc, "n_w", inst.forecasts.winds());
    return inst;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed instance document: ") + e.what());
  }
}

json solution_to_json(const UCSolution& sol) {
  json g = json::array();
  for (std::size_t t = 0; t < sol.dispatch.dim0(); ++t) {
    json per_case = json::array();
    for (std::size_t k = 0; k < sol.dispatch.dim1(); ++k) {
      auto fiber = sol.dispatch.fiber(t, k);
      per_case.push_back(json(std::vector<double>(fiber.begin(), fiber.end())));
    }
    g.push_back(std::move(per_case));
  }
  return {
      {"n_t", sol.horizon()},
      {"n_g", sol.generators()},
      {"n_k", sol.cases() == 0 ? 0 : sol.cases() - 1},
      {"objective", sol.objective},
      {"mip_gap", sol.mip_gap},
      {"z", matrix_to_json(sol.commit)},
      {"u", matrix_to_json(sol.startup)},
      {"v", matrix_to_json(sol.shutdown)},
      {"g", g},
      {"r", matrix_to_json(sol.reserve)},
  };
}

UCSolution solution_from_json(const json& doc) {
  try {
    UCSolution sol;
    sol.commit = matrix_from_json<int>(doc.at("z"), "z");
    sol.startup = matrix_from_json<int>(doc.at("u"), "u");
    sol.shutdown = matrix_from_json<int>(doc.at("v"), "v");
    sol.reserve = matrix_from_json<double>(doc.at("r"), "r");
    sol.objective = doc.value("objective", 0.0);
    sol.mip_gap = doc.value("mip_gap", 0.0);
    const json& g = doc.at("g");
    const std::size_t nt = g.size();
    const std::size_t nc = nt == 0 ? 0 : g.front().size();
    const std::size_t ng = nc == 0 ? 0 : g.front().front().size();
    sol.dispatch = Tensor3<double>(nt, nc, ng);
    for (std::size_t t = 0; t < nt; ++t) {
      if (g[t].size() != nc) throw DataError("g: ragged contingency axis");
      for (std::size_t k = 0; k < nc; ++k) {
        if (g[t][k].size() != ng) throw DataError("g: ragged generator axis");
        for (std::size_t i = 0; i < ng; ++i) sol.dispatch(t, k, i) = g[t][k][i].get<double>();
      }
    }
    return sol;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed solution document: ") + e.what());
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

UCInstance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json(path));
}

void write_instance(const std::filesystem::path& path, const UCInstance& inst) {
  write_json(path, instance_to_json(inst));
}

UCSolution read_solution(const std::filesystem::path& path) {
  return solution_from_json(read_json(path));
}

void write_solution(const std::filesystem::path& path, const UCSolution& sol) {
  write_json(path, solution_to_json(sol));
}

}  // namespace ccuc
