#include "sysmodel/core/value.hpp"

namespace sysmodel {

std::string type_name(ValueType t) {
    switch (t) {
        case ValueType::Int: return "Int";
        case ValueType::Bool: return "Bool";
        case ValueType::String: return "String";
        case ValueType::ObjectRef: return "ObjectRef";
    }
    return "?";
}

ValueType type_of(const Value& v) {
    switch (v.index()) {
        case 0: return ValueType::Int;
        case 1: return ValueType::Bool;
        case 2: return ValueType::String;
        default: return ValueType::ObjectRef;
    }
}

Value default_value(ValueType t) {
    switch (t) {
        case ValueType::Int: return Value{std::int64_t{0}};
        case ValueType::Bool: return Value{false};
        case ValueType::String: return Value{std::string{}};
        case ValueType::ObjectRef: return Value{RefValue{}};
    }
    return Value{std::int64_t{0}};
}

static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string render_value(const Value& v) {
    switch (v.index()) {
        case 0: return std::to_string(std::get<std::int64_t>(v));
        case 1: return std::get<bool>(v) ? "true" : "false";
        case 2: return quote(std::get<std::string>(v));
        default: {
            const auto& r = std::get<RefValue>(v);
            return r.is_null() ? "@null" : "@" + r.name;
        }
    }
}

}  // namespace sysmodel
