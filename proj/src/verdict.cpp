#include "sysmodel/refine/verdict.hpp"

#include <sstream>

namespace sysmodel::refine {

void RefinementVerdict::reject(std::string rule, std::string message,
                               std::string doc_id, Span span) {
    accepted = false;
    violations.push_back({std::move(rule), std::move(message), std::move(doc_id), span});
}

std::string RefinementVerdict::render() const {
    std::ostringstream out;
    out << (accepted ? "ACCEPTED" : "REJECTED") << '\n';
    for (const auto& v : violations)
        out << v.rule << ' ' << v.doc_id << ':' << v.span.line << ':' << v.span.col
            << ' ' << v.message << '\n';
    for (const auto& n : notes) out << "NOTE " << n << '\n';
    if (witness) {
        out << "witness\n";
        out << *witness;
        if (!witness->empty() && witness->back() != '\n') out << '\n';
    }
    return out.str();
}

}  // namespace sysmodel::refine
