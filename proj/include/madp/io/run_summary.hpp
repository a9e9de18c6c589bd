#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace madp::io {

using json = nlohmann::json;

void write_json(const std::filesystem::path& path, const json& doc);
json read_json(const std::filesystem::path& path);

/// Structural validation against the subset of JSON Schema the shipped
/// schema uses: `type`, `required`, `properties` (recursively), and
/// `items`. Returns an empty string on success, else the first problem.
std::string schema_validation_error(const json& doc, const json& schema);

} // namespace madp::io
