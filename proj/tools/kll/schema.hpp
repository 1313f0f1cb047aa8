#pragma once

// Validation of inputs against the shipped JSON schemas (draft-07 subset).

#include <json.hpp>

#include <map>
#include <string>

namespace kll::cli {

using json = nlohmann::json;

/// Schemas keyed by file name ("field.schema.json"); cross-file $ref is
/// resolved against this registry.
class SchemaRegistry {
public:
    /// Registry holding the schemas compiled into the binary.
    static const SchemaRegistry& builtin();

    void add(const std::string& name, json schema);
    const json& get(const std::string& name) const;
    bool has(const std::string& name) const { return schemas_.count(name) != 0; }

    /// Throws SchemaError naming the JSON pointer of the first violation.
    void validate(const json& doc, const std::string& schema_name) const;

private:
    std::map<std::string, json> schemas_;
};

}  // namespace kll::cli
