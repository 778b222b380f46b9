#pragma once

#include <string>
#include <string_view>

#include "sysmodel/dsl/ast.hpp"

namespace sysmodel::dsl {

/// Parses `text` as a document of the given kind. `doc_id` names the
/// document in findings (callers usually pass the file path). Throws
/// SyntaxError and DuplicateName.
Document parse(DocKind kind, std::string_view text, std::string doc_id);

/// Parses a single expression (used by stimuli and tests).
ExprPtr parse_expr_text(std::string_view text);

}  // namespace sysmodel::dsl
