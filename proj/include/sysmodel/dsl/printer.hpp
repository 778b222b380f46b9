#pragma once

#include <string>

#include "sysmodel/dsl/ast.hpp"

namespace sysmodel::dsl {

/// Canonical text for a document: 2-space indent, declaration order
/// preserved. The output parses back to a structurally equal body.
std::string serialize(const Document& d);

std::string serialize_body(DocKind kind, const Body& body);

}  // namespace sysmodel::dsl
