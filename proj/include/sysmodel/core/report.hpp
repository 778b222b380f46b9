#pragma once

#include <string>
#include <vector>

#include "sysmodel/core/span.hpp"

namespace sysmodel {

enum class Severity { Error, Warning };

struct Finding {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::string doc_id;
    Span span;

    auto operator<=>(const Finding&) const = default;
};

/// An empty findings list means the checked property holds.
struct ValidationReport {
    std::vector<Finding> findings;

    void error(std::string code, std::string message, std::string doc_id = "",
               Span span = {});
    void warning(std::string code, std::string message, std::string doc_id = "",
                 Span span = {});
    void merge(const ValidationReport& other);

    bool empty() const { return findings.empty(); }
    bool ok() const;  // no error-severity findings
    std::size_t error_count() const;

    /// Sorts findings by (doc id, span, code, message) for stable output.
    void sort();

    /// One finding per line: `SEVERITY CODE file:line:col message`.
    std::string render() const;
};

}  // namespace sysmodel
