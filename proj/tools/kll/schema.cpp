#include "schema.hpp"

#include "kll/arith.hpp"
#include "kll/error.hpp"

#include <regex>

namespace kll::cli {

// generated at build time from schemas/v1
extern const std::map<std::string, std::string>& embedded_schemas();

namespace {

struct Failure {
    std::string pointer;
    std::string message;
};

std::string escape_token(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

class Validator {
public:
    explicit Validator(const SchemaRegistry& reg) : reg_(reg) {}

    // false with `fail` filled on the first violation
    bool check(const json& doc, const json& schema, const std::string& file, const std::string& ptr, Failure& fail) {
        if (schema.is_boolean()) {
            if (schema.get<bool>()) return true;
            fail = {ptr, "no value allowed"};
            return false;
        }
        if (auto it = schema.find("$ref"); it != schema.end()) {
            const auto [target, target_file] = resolve(it->get<std::string>(), file);
            return check(doc, target, target_file, ptr, fail);
        }
        if (auto it = schema.find("type"); it != schema.end() && !type_ok(doc, it->get<std::string>())) {
            fail = {ptr, "expected " + it->get<std::string>()};
            return false;
        }
        if (auto it = schema.find("enum"); it != schema.end()) {
            bool found = false;
            for (const auto& v : *it) found = found || v == doc;
            if (!found) {
                fail = {ptr, "value not in " + it->dump()};
                return false;
            }
        }
        if (auto it = schema.find("format"); it != schema.end() && doc.is_string() && !format_ok(doc.get<std::string>(), it->get<std::string>())) {
            fail = {ptr, "not a valid " + it->get<std::string>() + ": '" + doc.get<std::string>() + "'"};
            return false;
        }
        if (auto it = schema.find("minimum"); it != schema.end() && doc.is_number() && doc.get<double>() < it->get<double>()) {
            fail = {ptr, "below minimum " + it->dump()};
            return false;
        }
        if (auto it = schema.find("anyOf"); it != schema.end()) {
            Failure first;
            bool any = false;
            for (const auto& alt : *it) {
                Failure f;
                if (check(doc, alt, file, ptr, f)) {
                    any = true;
                    break;
                }
                if (first.message.empty() || f.pointer.size() > first.pointer.size()) first = f;
            }
            if (!any) {
                fail = first.pointer.size() > ptr.size() ? first : Failure{ptr, "matches no alternative (" + first.message + ")"};
                return false;
            }
        }
        if (doc.is_object()) return check_object(doc, schema, file, ptr, fail);
        if (doc.is_array()) return check_array(doc, schema, file, ptr, fail);
        return true;
    }

private:
    bool check_object(const json& doc, const json& schema, const std::string& file, const std::string& ptr, Failure& fail) {
        if (auto it = schema.find("required"); it != schema.end())
            for (const auto& k : *it)
                if (!doc.contains(k.get<std::string>())) {
                    fail = {ptr + "/" + escape_token(k.get<std::string>()), "required property missing"};
                    return false;
                }
        const json* props = nullptr;
        if (auto it = schema.find("properties"); it != schema.end()) props = &*it;
        const auto extra = schema.find("additionalProperties");
        for (const auto& [k, v] : doc.items()) {
            const std::string p = ptr + "/" + escape_token(k);
            if (props != nullptr && props->contains(k)) {
                if (!check(v, (*props)[k], file, p, fail)) return false;
            } else if (extra != schema.end()) {
                if (!check(v, *extra, file, p, fail)) return false;
            }
        }
        return true;
    }

    bool check_array(const json& doc, const json& schema, const std::string& file, const std::string& ptr, Failure& fail) {
        if (auto it = schema.find("minItems"); it != schema.end() && doc.size() < it->get<std::size_t>()) {
            fail = {ptr, "fewer than " + it->dump() + " items"};
            return false;
        }
        if (auto it = schema.find("maxItems"); it != schema.end() && doc.size() > it->get<std::size_t>()) {
            fail = {ptr, "more than " + it->dump() + " items"};
            return false;
        }
        std::size_t start = 0;
        if (auto it = schema.find("prefixItems"); it != schema.end()) {
            for (; start < it->size() && start < doc.size(); ++start)
                if (!check(doc[start], (*it)[start], file, ptr + "/" + std::to_string(start), fail)) return false;
        }
        if (auto it = schema.find("items"); it != schema.end())
            for (std::size_t i = start; i < doc.size(); ++i)
                if (!check(doc[i], *it, file, ptr + "/" + std::to_string(i), fail)) return false;
        return true;
    }

    static bool type_ok(const json& doc, const std::string& t) {
        if (t == "object") return doc.is_object();
        if (t == "array") return doc.is_array();
        if (t == "string") return doc.is_string();
        if (t == "integer") return doc.is_number_integer();
        if (t == "number") return doc.is_number();
        if (t == "boolean") return doc.is_boolean();
        if (t == "null") return doc.is_null();
        return false;
    }

    static bool format_ok(const std::string& s, const std::string& f) {
        static const std::regex integer("^[+-]?[0-9]+$");
        static const std::regex rational("^[+-]?[0-9]+(/[0-9]*[1-9][0-9]*)?$");
        if (f == "integer") return std::regex_match(s, integer);
        if (f == "rational") return std::regex_match(s, rational);
        return true;
    }

    std::pair<const json&, std::string> resolve(const std::string& ref, const std::string& file) {
        const auto hash = ref.find('#');
        const std::string target_file = hash == 0 ? file : ref.substr(0, hash);
        const json& base = reg_.get(target_file);
        if (hash == std::string::npos || hash + 1 == ref.size()) return {base, target_file};
        const json& node = base.at(json::json_pointer(ref.substr(hash + 1)));
        return {node, target_file};
    }

    const SchemaRegistry& reg_;
};

}  // namespace

const SchemaRegistry& SchemaRegistry::builtin() {
    static const SchemaRegistry reg = [] {
        SchemaRegistry r;
        for (const auto& [name, text] : embedded_schemas()) r.add(name, json::parse(text));
        return r;
    }();
    return reg;
}

void SchemaRegistry::add(const std::string& name, json schema) { schemas_[name] = std::move(schema); }

const json& SchemaRegistry::get(const std::string& name) const {
    const auto it = schemas_.find(name);
    if (it == schemas_.end()) throw InvalidArgument("unknown schema " + name);
    return it->second;
}

void SchemaRegistry::validate(const json& doc, const std::string& schema_name) const {
    Validator v(*this);
    Failure f;
    if (!v.check(doc, get(schema_name), schema_name, "", f))
        throw SchemaError((f.pointer.empty() ? std::string("/") : f.pointer) + ": " + f.message);
}

}  // namespace kll::cli
