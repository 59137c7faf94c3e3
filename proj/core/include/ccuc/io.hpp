#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "ccuc/instance.hpp"

namespace ccuc {

// Structured-text (JSON) documents. Field names follow schema/instance.schema.json.

nlohmann::json instance_to_json(const UCInstance& inst);
UCInstance instance_from_json(const nlohmann::json& doc);

nlohmann::json solution_to_json(const UCSolution& sol);
UCSolution solution_from_json(const nlohmann::json& doc);

UCInstance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const UCInstance& inst);

UCSolution read_solution(const std::filesystem::path& path);
void write_solution(const std::filesystem::path& path, const UCSolution& sol);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace ccuc
