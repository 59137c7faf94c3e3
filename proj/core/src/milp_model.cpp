#include "ccuc/milp_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ccuc {

int MilpModel::add_variable(std::string name, VarKind kind, double lower, double upper,
                            double objective) {
  const int idx = static_cast<int>(variables_.size());
  auto [it, inserted] = index_.emplace(name, idx);
  if (!inserted) throw std::invalid_argument("duplicate variable name " + name);
  variables_.push_back({std::move(name), kind, lower, upper});
  objective_.push_back(objective);
  return idx;
}

void MilpModel::add_constraint(std::string name, std::vector<LinearTerm> terms, Sense sense,
                               double rhs) {
  const int n = static_cast<int>(variables_.size());
  for (const LinearTerm& t : terms)
    if (t.var < 0 || t.var >= n)
      throw std::out_of_range("constraint " + name + " references an undeclared variable");
  std::ranges::sort(terms, {}, &LinearTerm::var);
  std::vector<LinearTerm> merged;
  merged.reserve(terms.size());
  for (const LinearTerm& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const LinearTerm& t) { return t.coef == 0.0; });
  constraints_.push_back({std::move(name), std::move(merged), sense, rhs});
}

std::size_t MilpModel::num_binaries() const {
  return static_cast<std::size_t>(std::ranges::count(variables_, VarKind::kBinary, &Variable::kind));
}

std::size_t MilpModel::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const Constraint& c : constraints_) nnz += c.terms.size();
  return nnz;
}

int MilpModel::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

std::map<std::string, std::size_t> MilpModel::row_families() const {
  std::map<std::string, std::size_t> counts;
  for (const Constraint& c : constraints_) ++counts[c.name.substr(0, c.name.find('['))];
  return counts;
}

std::vector<std::string> MilpModel::validate() const {
  std::vector<std::string> problems;
  const int n = static_cast<int>(variables_.size());
  for (const Variable& v : variables_) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
      problems.push_back("variable " + v.name + " has inconsistent bounds");
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0))
      problems.push_back("binary " + v.name + " has bounds outside [0, 1]");
  }
  for (const Constraint& c : constraints_) {
    int prev = -1;
    for (const LinearTerm& t : c.terms) {
      if (t.var < 0 || t.var >= n) {
        problems.push_back("constraint " + c.name + " references an undeclared variable");
        break;
      }
      if (t.var <= prev) problems.push_back("constraint " + c.name + " has unsorted terms");
      if (!std::isfinite(t.coef)) problems.push_back("constraint " + c.name + " has a non-finite coefficient");
      prev = t.var;
    }
    if (!std::isfinite(c.rhs)) problems.push_back("constraint " + c.name + " has a non-finite rhs");
  }
  return problems;
}

std::string_view sense_symbol(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "<=";
    case Sense::kEqual: return "=";
    case Sense::kGreaterEqual: return ">=";
  }
  return "?";
}

bool parse_indexed_name(std::string_view name, ParsedName& out) {
  const auto open = name.find('[');
  if (open == std::string_view::npos || open == 0 || name.back() != ']') return false;
  out.symbol.assign(name.substr(0, open));
  out.index.clear();
  std::string_view body = name.substr(open + 1, name.size() - open - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) return false;
    long long value = 0;
    std::string_view digits = item.substr(eq + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return false;
    out.index.emplace(std::string(item.substr(0, eq)), value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return true;
}

}  // namespace ccuc
