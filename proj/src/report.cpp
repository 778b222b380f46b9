#include "sysmodel/core/report.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace sysmodel {

void ValidationReport::error(std::string code, std::string message,
                             std::string doc_id, Span span) {
    findings.push_back({Severity::Error, std::move(code), std::move(message),
                        std::move(doc_id), span});
}

void ValidationReport::warning(std::string code, std::string message,
                               std::string doc_id, Span span) {
    findings.push_back({Severity::Warning, std::move(code), std::move(message),
                        std::move(doc_id), span});
}

void ValidationReport::merge(const ValidationReport& other) {
    findings.insert(findings.end(), other.findings.begin(), other.findings.end());
}

bool ValidationReport::ok() const {
    return std::none_of(findings.begin(), findings.end(),
                        [](const Finding& f) { return f.severity == Severity::Error; });
}

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(),
                      [](const Finding& f) { return f.severity == Severity::Error; }));
}

void ValidationReport::sort() {
    std::stable_sort(findings.begin(), findings.end(),
                     [](const Finding& a, const Finding& b) {
                         return std::tie(a.doc_id, a.span, a.code, a.message) <
                                std::tie(b.doc_id, b.span, b.code, b.message);
                     });
}

std::string ValidationReport::render() const {
    std::ostringstream out;
    for (const auto& f : findings) {
        out << (f.severity == Severity::Error ? "error" : "warning") << ' ' << f.code
            << ' ' << f.doc_id << ':' << f.span.line << ':' << f.span.col << ' '
            << f.message << '\n';
    }
    return out.str();
}

}  // namespace sysmodel
