#include "sysmodel/sem/views.hpp"

namespace sysmodel::sem {

std::string view_name(View v) {
    switch (v) {
        case View::Structural: return "Structural";
        case View::Behavioral: return "Behavioral";
        case View::Data: return "Data";
        case View::Interface: return "Interface";
    }
    return "?";
}

ViewSet classify_view(dsl::DocKind kind) {
    using dsl::DocKind;
    switch (kind) {
        case DocKind::ClassDiagram:
            return {View::Structural, View::Data, View::Interface};
        case DocKind::ObjectDiagram:
            return {View::Structural, View::Data};
        case DocKind::StateDiagram:
            return {View::Behavioral, View::Data, View::Interface};
        case DocKind::SequenceDiagram:
            return {View::Behavioral, View::Interface};
        case DocKind::Text:
            return {};
    }
    return {};
}

std::string render_views(const ViewSet& views) {
    std::string out = "{";
    bool first = true;
    for (View v : views) {
        if (!first) out += ",";
        first = false;
        out += view_name(v);
    }
    out += "}";
    return out;
}

}  // namespace sysmodel::sem
