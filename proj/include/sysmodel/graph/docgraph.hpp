#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sysmodel/dsl/ast.hpp"
#include "sysmodel/refine/state_refinement.hpp"
#include "sysmodel/refine/verdict.hpp"

namespace sysmodel::graph {

struct DuplicatePath : Error {
    explicit DuplicatePath(const std::string& path)
        : Error("document already in the graph: " + path) {}
};
struct ParseFailure : Error {
    explicit ParseFailure(const std::string& what) : Error(what) {}
};
struct UnknownNode : Error {
    explicit UnknownNode(const std::string& id) : Error("unknown node: " + id) {}
};
struct CycleError : Error {
    explicit CycleError(const std::string& what) : Error(what) {}
};
struct IOError : Error {
    explicit IOError(const std::string& what) : Error(what) {}
};
struct ManifestFormatError : Error {
    ManifestFormatError(const std::string& what, int line)
        : Error("manifest line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};
struct UnsupportedTransformShape : Error {
    explicit UnsupportedTransformShape(const std::string& what) : Error(what) {}
};

enum class EdgeKind { RefersTo, Transform };

/// Document node with lifecycle state. `validated`, `verified` and
/// `tested` are recorded metadata; `consistent` is computed by transform
/// validation and `redundant` by the redundancy check, both tri-state.
struct DocNode {
    std::string id;
    dsl::DocKind kind = dsl::DocKind::Text;
    std::string path;  // relative to the manifest directory
    std::string author;
    std::string created;
    std::string updated;
    bool validated = false;
    bool verified = false;
    bool tested = false;
    std::optional<bool> consistent;
    std::optional<bool> redundant;
    std::vector<refine::Violation> violations;  // in-memory, not persisted
};

/// Directed hyper-edge: a technical step may read several documents and
/// produce several documents.
struct DocEdge {
    EdgeKind kind = EdgeKind::RefersTo;
    std::vector<std::string> sources;
    std::vector<std::string> targets;

    auto operator<=>(const DocEdge&) const = default;
};

struct DocGraph {
    std::map<std::string, DocNode> nodes;
    std::vector<DocEdge> edges;  // kept in canonical sorted order
    std::string manifest_path;
    std::function<std::string()> now;  // injectable clock, ISO-8601 UTC

    std::string manifest_dir() const;
    const DocNode& node(const std::string& id) const;
};

/// Current time in ISO-8601 UTC (the default clock).
std::string utc_now();

DocGraph make_graph(std::string manifest_path);

/// Parses the file (atomically: a parse failure leaves the graph
/// unchanged) and adds a node with fresh timestamps and all flags down.
/// Returns the node id, derived from the file stem.
std::string add_document(DocGraph& g, const std::string& path, dsl::DocKind kind,
                         const std::string& author);

/// Adds an edge unless it would create a cycle within its kind's
/// subgraph. Adding an existing edge is a no-op. Returns the edge index in
/// canonical order.
std::size_t link(DocGraph& g, EdgeKind kind, const std::vector<std::string>& sources,
                 const std::vector<std::string>& targets);

/// Runs the technical step the edge represents — class-diagram
/// refinement, state-diagram refinement (with the optional state mapping)
/// or sequence-against-state checking — and sets the targets' `consistent`
/// flag from the verdict. Documents are read, never written.
refine::RefinementVerdict validate_transform(DocGraph& g, std::size_t edge_index,
                                             const refine::StateMapping& mapping = {});

struct RedundancyResult {
    std::optional<bool> redundant;
    std::vector<std::string> notes;
};

/// A sequence diagram is redundant when some state diagram in the graph
/// already accepts it as a path. Other kinds are undecidable here; the
/// flag stays unset with a note.
RedundancyResult mark_redundant(DocGraph& g, const std::string& node_id);

/// Writes the manifest atomically (temp file + rename). Fails with
/// IOError when a node's document file is missing.
void save(const DocGraph& g);

/// Loads and validates a manifest; inverse of save.
DocGraph load(const std::string& manifest_path);

/// Parses the document behind a node.
dsl::Document load_document(const DocGraph& g, const DocNode& node);

std::string render_edge(const DocEdge& e);

}  // namespace sysmodel::graph
