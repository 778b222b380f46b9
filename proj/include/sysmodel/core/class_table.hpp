#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sysmodel/core/expr.hpp"
#include "sysmodel/core/message.hpp"
#include "sysmodel/core/report.hpp"

namespace sysmodel {

struct Attribute {
    std::string name;
    ValueType type;

    bool operator==(const Attribute&) const = default;
};

struct Param {
    std::string name;
    ValueType type;
};

struct Method {
    std::string name;
    std::vector<Param> params;
    ValueType result;

    std::vector<ValueType> param_types() const;
};

/// Two methods are the same member when name, parameter types and result
/// agree; parameter names are cosmetic.
bool same_member(const Method& a, const Method& b);

struct Signature {
    std::vector<Attribute> attributes;
    std::vector<Method> methods;

    const Attribute* find_attribute(const std::string& name) const;
    const Method* find_method(const std::string& name) const;
};

struct Association {
    std::string name;
    ClassName source;
    ClassName target;
    std::string doc_id;
    Span span;
};

/// Per-class entry: declared signature, optional parent, invariant
/// expressions (conjoined), and source provenance for findings.
struct ClassInfo {
    Signature sig;
    std::optional<ClassName> parent;
    std::vector<ExprPtr> invariants;
    std::string doc_id;
    Span span;
};

struct ClassTable {
    std::map<ClassName, ClassInfo> classes;
    std::map<std::string, Association> associations;

    bool has_class(const ClassName& c) const { return classes.count(c) > 0; }

    /// True iff c is d or a (transitive) descendant of d. Cycle-safe.
    bool subclass_of(const ClassName& c, const ClassName& d) const;

    /// Ancestor chain from the root down to c itself. Throws UnknownClass;
    /// stops instead of looping when the parent chain has a cycle.
    std::vector<ClassName> ancestry(const ClassName& c) const;
};

/// Union of the signatures along the ancestor chain, ancestor members
/// first in declaration order. Identical redeclarations collapse; a
/// redeclaration that changes a member's type throws
/// ConflictingInheritedMember.
Signature effective_signature(const ClassName& c, const ClassTable& t);

/// Attribute name -> type map of the effective signature.
TypeEnv effective_attributes(const ClassName& c, const ClassTable& t);

/// Reports inheritance cycles, unknown parents, conflicting member
/// redeclarations, unknown association endpoints and ill-typed invariants.
/// Empty report iff the table satisfies all its invariants.
ValidationReport check_class_table(const ClassTable& t);

}  // namespace sysmodel
