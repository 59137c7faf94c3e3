#include "ccuc/model_export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "ccuc/errors.hpp"

namespace ccuc {

namespace {

constexpr std::string_view kObjectiveRow = "obj";

std::string number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

char row_type(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return 'L';
    case Sense::kEqual: return 'E';
    case Sense::kGreaterEqual: return 'G';
  }
  return 'G';
}

// Emits data lines either column-aligned or whitespace-separated.
class LineWriter {
 public:
  LineWriter(std::ostream& out, MpsFormat format, std::size_t name_width)
      : out_(out), fixed_(format == MpsFormat::kFixed), name_(std::max<std::size_t>(name_width, 8)) {}

  // code, then up to five fields: name, name, value, name, value.
  void line(std::string_view code, std::string_view f1 = {}, std::string_view f2 = {},
            std::string_view f3 = {}, std::string_view f4 = {}, std::string_view f5 = {}) {
    if (!fixed_) {
      out_ << ' ' << code;
      for (std::string_view f : {f1, f2, f3, f4, f5})
        if (!f.empty()) out_ << ' ' << f;
      out_ << '\n';
      return;
    }
    // Classic layout: code in columns 2-3, then fields separated by gaps.
    std::string s = " ";
    s += code;
    s.resize(4, ' ');
    auto put = [&](std::string_view f, std::size_t width, bool last) {
      if (f.empty()) return false;
      s += f;
      if (!last && f.size() < width) s.append(width - f.size(), ' ');
      return true;
    };
    const std::size_t value = 24;
    if (!put(f1, name_ + 2, f2.empty())) return finish(s);
    if (!put(f2, name_ + 2, f3.empty())) return finish(s);
    if (!put(f3, value + 3, f4.empty())) return finish(s);
    if (!put(f4, name_ + 2, f5.empty())) return finish(s);
    put(f5, value, true);
    finish(s);
  }

 private:
  void finish(std::string& s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out_ << s << '\n';
  }

  std::ostream& out_;
  bool fixed_;
  std::size_t name_;
};

}  // namespace

void write_mps(std::ostream& out, const MilpModel& model, MpsFormat format,
               std::string_view problem_name) {
  const auto& vars = model.variables();
  const auto& rows = model.constraints();
  std::size_t width = kObjectiveRow.size();
  for (const Variable& v : vars) width = std::max(width, v.name.size());
  for (const Constraint& c : rows) width = std::max(width, c.name.size());
  for (const Variable& v : vars)
    if (v.name.find_first_of(" \t") != std::string::npos)
      throw DataError("MPS export: column name '" + v.name + "' contains whitespace");
  LineWriter w(out, format, width);

  out << "NAME          " << problem_name << '\n';
  out << "ROWS\n";
  w.line("N", kObjectiveRow);
  for (const Constraint& c : rows) w.line(std::string(1, row_type(c.sense)), c.name);

  // Transpose to column-major.
  std::vector<std::vector<std::pair<std::size_t, double>>> cols(vars.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const LinearTerm& t : rows[r].terms) cols[t.var].emplace_back(r, t.coef);

  out << "COLUMNS\n";
  bool in_integer_block = false;
  int marker = 0;
  const auto& obj = model.objective();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const bool integer = vars[j].kind == VarKind::kBinary;
    if (integer != in_integer_block) {
      const std::string tag = "MARKER" + std::to_string(marker++);
      w.line("", tag, "'MARKER'", integer ? "'INTORG'" : "'INTEND'");
      in_integer_block = integer;
    }
    const std::string& name = vars[j].name;
    bool wrote = false;
    if (obj[j] != 0.0) {
      w.line("", name, kObjectiveRow, number(obj[j]));
      wrote = true;
    }
    for (const auto& [r, coef] : cols[j]) {
      w.line("", name, rows[r].name, number(coef));
      wrote = true;
    }
    // Keep columns that appear nowhere, so the column set round-trips.
    if (!wrote) w.line("", name, kObjectiveRow, "0");
  }
  if (in_integer_block) w.line("", "MARKER" + std::to_string(marker), "'MARKER'", "'INTEND'");

  out << "RHS\n";
  for (const Constraint& c : rows)
    if (c.rhs != 0.0) w.line("", "RHS", c.name, number(c.rhs));

  out << "BOUNDS\n";
  for (const Variable& v : vars) {
    if (v.kind == VarKind::kBinary) {
      if (v.lower == 0.0 && v.upper == 1.0) {
        w.line("BV", "BND", v.name);
      } else {
        w.line("LO", "BND", v.name, number(v.lower));
        w.line("UP", "BND", v.name, number(v.upper));
      }
      continue;
    }
    if (v.lower == -kInf && v.upper == kInf) {
      w.line("FR", "BND", v.name);
      continue;
    }
    if (v.lower == -kInf)
      w.line("MI", "BND", v.name);
    else if (v.lower != 0.0)
      w.line("LO", "BND", v.name, number(v.lower));
    if (v.upper != kInf) w.line("UP", "BND", v.name, number(v.upper));
  }
  out << "ENDATA\n";
}

void write_mps(const std::filesystem::path& path, const MilpModel& model, MpsFormat format,
               std::string_view problem_name) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_mps(out, model, format, problem_name);
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace ccuc
