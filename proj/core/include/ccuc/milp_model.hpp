#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ccuc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { kContinuous, kBinary };
enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInf;
};

struct LinearTerm {
  int var = -1;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;  // sorted by variable, no duplicates, no zeros
  Sense sense = Sense::kGreaterEqual;
  double rhs = 0.0;
};

/// Solver-agnostic minimisation model. Row and column order is insertion
/// order, so identical build sequences give identical models.
class MilpModel {
 public:
  /// Returns the new column index. Names must be unique.
  int add_variable(std::string name, VarKind kind, double lower, double upper,
                   double objective = 0.0);

  /// Merges repeated variables and drops zero coefficients. Throws
  /// std::out_of_range on an undeclared variable index.
  void add_constraint(std::string name, std::vector<LinearTerm> terms, Sense sense,
                      double rhs);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::size_t num_binaries() const;
  std::size_t num_nonzeros() const;

  /// Column index by name, or -1.
  int find(std::string_view name) const;

  /// Constraint counts keyed by name prefix (text before '[').
  std::map<std::string, std::size_t> row_families() const;

  /// Structural problems (undeclared variables, unsorted terms, bad bounds).
  std::vector<std::string> validate() const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, int> index_;
};

std::string_view sense_symbol(Sense sense);

/// Parsed `symbol[key=value,...]` identifier.
struct ParsedName {
  std::string symbol;
  std::map<std::string, long long> index;
};

/// Splits names such as `g[t=3,k=0,i=17]`; returns false for other shapes.
bool parse_indexed_name(std::string_view name, ParsedName& out);

}  // namespace ccuc
