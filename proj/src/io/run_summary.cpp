#include "madp/io/run_summary.hpp"

#include <fstream>

#include "madp/errors.hpp"

namespace madp::io {

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw UsageError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw UsageError("write failed for " + path.string());
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw UsageError(path.string() + ": " + e.what());
    }
    return doc;
}

namespace {

bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

std::string validate(const json& value, const json& schema, const std::string& where) {
    if (schema.contains("type")) {
        const std::string type = schema["type"].get<std::string>();
        if (!type_matches(value, type)) {
            return where + ": expected " + type;
        }
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                return where + ": missing required property '" + key.get<std::string>() + "'";
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (value.contains(key)) {
                const std::string err = validate(value[key], sub, where + "." + key);
                if (!err.empty()) return err;
            }
        }
    }
    if (schema.contains("items") && value.is_array()) {
        std::size_t i = 0;
        for (const auto& element : value) {
            const std::string err =
                validate(element, schema["items"], where + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
            ++i;
        }
    }
    return {};
}

} // namespace

std::string schema_validation_error(const json& doc, const json& schema) {
    return validate(doc, schema, "$");
}

} // namespace madp::io
