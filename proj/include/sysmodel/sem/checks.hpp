#pragma once

#include "sysmodel/core/class_table.hpp"
#include "sysmodel/core/report.hpp"
#include "sysmodel/dsl/ast.hpp"

namespace sysmodel::sem {

/// Compatibility of an object diagram with a class table: classes exist,
/// bound attributes belong to the effective signature with type-correct
/// literals, links use declared associations with compatible endpoints,
/// creatable owners and classes are known.
ValidationReport check_object_diagram(const dsl::Document& od, const ClassTable& t);

/// Compatibility of a sequence diagram with a class table: lifeline
/// classes exist and every event's selector, arity and literal argument
/// types belong to the receiver's effective signature. Messages to `env`
/// are unconstrained.
ValidationReport check_sequence_diagram(const dsl::Document& qd, const ClassTable& t);

}  // namespace sysmodel::sem
