#pragma once

#include <set>
#include <string>

#include "sysmodel/dsl/ast.hpp"

namespace sysmodel::sem {

/// The four projection aspects a document can describe.
enum class View { Structural, Behavioral, Data, Interface };

using ViewSet = std::set<View>;

std::string view_name(View v);

/// Fixed classification per document kind. Text documents carry no formal
/// view; elaboration reports that as a warning.
ViewSet classify_view(dsl::DocKind kind);

std::string render_views(const ViewSet& views);

}  // namespace sysmodel::sem
