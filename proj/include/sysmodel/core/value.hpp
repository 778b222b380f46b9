#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace sysmodel {

enum class ValueType { Int, Bool, String, ObjectRef };

std::string type_name(ValueType t);

/// Reference to an object by identifier name; an empty name is the null
/// reference.
struct RefValue {
    std::string name;

    bool is_null() const { return name.empty(); }
    auto operator<=>(const RefValue&) const = default;
};

/// A ground value of the modeling language.
using Value = std::variant<std::int64_t, bool, std::string, RefValue>;

ValueType type_of(const Value& v);

/// Default value per type: 0, false, "", null reference.
Value default_value(ValueType t);

/// Canonical rendering: 42, true, "text", @name, @null.
std::string render_value(const Value& v);

}  // namespace sysmodel
