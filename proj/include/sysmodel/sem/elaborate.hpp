#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sysmodel/core/report.hpp"
#include "sysmodel/core/system_model.hpp"
#include "sysmodel/dsl/ast.hpp"

namespace sysmodel::sem {

struct ElaborateOptions {
    /// Object diagram that contributes the initial objects. Defaults to
    /// the only object diagram in the set; required when there are several.
    std::optional<std::string> initial_doc_id;
};

struct Elaboration {
    std::shared_ptr<const SystemModel> model;  // null when the report has errors
    ValidationReport report;

    bool ok() const { return model != nullptr; }
};

/// Directed document dependencies as (from, to) document id pairs.
using RefersTo = std::vector<std::pair<std::string, std::string>>;

/// Elaborates a document set into a SystemModel: merges the class
/// diagrams, attaches one automaton per class (a single-state automaton
/// without transitions where no state diagram constrains the class), takes
/// initial objects and creatable pools from the designated object diagram
/// and checks every cross-document context condition. Order-independent
/// over the document set. When `refers_to` is nonempty, behavioral
/// documents without a dependency path to a class diagram are flagged.
Elaboration elaborate(const std::vector<dsl::Document>& docs,
                      const RefersTo& refers_to = {},
                      const ElaborateOptions& options = {});

/// Merges the class diagrams of a document set into one table. Per-class
/// declarations must be disjoint across diagrams or identical; conflicts
/// are reported when a report is supplied.
ClassTable merge_class_tables(const std::vector<dsl::Document>& docs,
                              ValidationReport* report = nullptr);

}  // namespace sysmodel::sem
