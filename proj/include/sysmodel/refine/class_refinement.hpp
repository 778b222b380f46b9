#pragma once

#include "sysmodel/dsl/ast.hpp"
#include "sysmodel/refine/verdict.hpp"

namespace sysmodel::refine {

/// Additive class-diagram evolution: accepted iff every old class,
/// attribute, method, association and inheritance edge survives unchanged
/// and each class's new invariant implies its old one. New declarations
/// are free. Rules: R-CD-DELETE, R-CD-RETYPE, R-CD-INHERIT, R-CD-INV.
RefinementVerdict refine_class_diagram(const dsl::Document& old_doc,
                                       const dsl::Document& new_doc);

/// Implication check used for invariant strengthening: exhaustive
/// evaluation of `hypothesis implies conclusion` with Int variables over
/// [lo..hi] and Bool variables over both truth values. Returns nullopt
/// when the domain is not enumerable (String/ObjectRef variables or more
/// than max_vars free variables); callers degrade to a syntactic check.
std::optional<bool> bounded_implication(const ExprPtr& hypothesis,
                                        const ExprPtr& conclusion,
                                        const TypeEnv& env, int lo = -32,
                                        int hi = 32, std::size_t max_vars = 3);

}  // namespace sysmodel::refine
