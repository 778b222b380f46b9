#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sysmodel/core/span.hpp"

namespace sysmodel::refine {

struct Violation {
    std::string rule;
    std::string message;
    std::string doc_id;
    Span span;

    auto operator<=>(const Violation&) const = default;
};

/// Outcome of a technical-step or trace check. `accepted` holds exactly
/// when `violations` is empty; `checked_rules` lists every rule the check
/// evaluated, `notes` carry non-fatal caveats (degraded checks, bounds).
struct RefinementVerdict {
    bool accepted = true;
    std::vector<Violation> violations;
    std::vector<std::string> checked_rules;
    std::vector<std::string> notes;
    std::optional<std::string> witness;  // simulator trace format

    void reject(std::string rule, std::string message, std::string doc_id = "",
                Span span = {});

    /// `ACCEPTED` or `REJECTED` plus one violation per line
    /// (`RULE file:line:col message`), notes and witness lines after.
    std::string render() const;
};

}  // namespace sysmodel::refine
