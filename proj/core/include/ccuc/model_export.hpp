#pragma once

#include <filesystem>
#include <iosfwd>

#include "ccuc/milp_model.hpp"

namespace ccuc {

enum class MpsFormat {
  /// Column-aligned layout. Our row and column names exceed the classic
  /// 8-character fields, so fields are widened to the longest name while
  /// every field still starts at the same column on every line.
  kFixed,
  /// Whitespace-separated fields.
  kFree,
};

/// Writes `model` as MPS with names exactly as declared. Numbers use the
/// shortest representation that reads back to the same double. Binaries are
/// written as integer columns between MARKER lines with bounds [0, 1].
void write_mps(std::ostream& out, const MilpModel& model, MpsFormat format,
               std::string_view problem_name = "ccuc");
void write_mps(const std::filesystem::path& path, const MilpModel& model, MpsFormat format,
               std::string_view problem_name = "ccuc");

}  // namespace ccuc
