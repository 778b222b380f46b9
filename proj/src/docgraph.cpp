#include "sysmodel/graph/docgraph.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sysmodel/dsl/parser.hpp"
#include "sysmodel/refine/class_refinement.hpp"
#include "sysmodel/refine/synthesis.hpp"
#include "sysmodel/sem/elaborate.hpp"

namespace sysmodel::graph {

namespace fs = std::filesystem;
using dsl::DocKind;

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string DocGraph::manifest_dir() const {
    fs::path p(manifest_path);
    return p.has_parent_path() ? p.parent_path().string() : ".";
}

const DocNode& DocGraph::node(const std::string& id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw UnknownNode(id);
    return it->second;
}

DocGraph make_graph(std::string manifest_path) {
    DocGraph g;
    g.manifest_path = std::move(manifest_path);
    g.now = utc_now;
    return g;
}

namespace {

// Spaces, commas and percent signs in ids, paths and authors are escaped
// so the manifest stays one record per whitespace-separated line.
std::string escape_field(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '%': out += "%25"; break;
            case ' ': out += "%20"; break;
            case ',': out += "%2C"; break;
            case '\n': out += "%0A"; break;
            case '\t': out += "%09"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape_field(const std::string& s, int line) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '%') {
            out += s[i];
            continue;
        }
        if (i + 2 >= s.size()) throw ManifestFormatError("truncated escape", line);
        std::string hex = s.substr(i + 1, 2);
        i += 2;
        if (hex == "25") out += '%';
        else if (hex == "20") out += ' ';
        else if (hex == "2C") out += ',';
        else if (hex == "0A") out += '\n';
        else if (hex == "09") out += '\t';
        else throw ManifestFormatError("unknown escape %" + hex, line);
    }
    return out;
}

std::string tri_token(const std::optional<bool>& v) {
    if (!v) return "u";
    return *v ? "1" : "0";
}

std::optional<bool> parse_tri(const std::string& s, int line) {
    if (s == "u") return std::nullopt;
    if (s == "0") return false;
    if (s == "1") return true;
    throw ManifestFormatError("bad tri-state flag '" + s + "'", line);
}

std::string render_node(const DocNode& n) {
    std::ostringstream out;
    out << "node " << escape_field(n.id) << ' ' << dsl::extension_of(n.kind) << ' '
        << escape_field(n.path) << " author=" << escape_field(n.author)
        << " created=" << n.created << " updated=" << n.updated
        << " flags=v:" << (n.validated ? 1 : 0) << ",V:" << (n.verified ? 1 : 0)
        << ",t:" << (n.tested ? 1 : 0) << ",c:" << tri_token(n.consistent)
        << ",r:" << tri_token(n.redundant);
    return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// True when `from` can reach `to` over the given kind's edges.
bool reaches(const DocGraph& g, EdgeKind kind, const std::string& from,
             const std::string& to) {
    std::set<std::string> seen{from};
    std::vector<std::string> work{from};
    while (!work.empty()) {
        std::string cur = work.back();
        work.pop_back();
        if (cur == to) return true;
        for (const auto& e : g.edges) {
            if (e.kind != kind) continue;
            if (std::find(e.sources.begin(), e.sources.end(), cur) == e.sources.end())
                continue;
            for (const auto& t : e.targets)
                if (seen.insert(t).second) work.push_back(t);
        }
    }
    return false;
}

void check_dag(const DocGraph& g, EdgeKind kind, int line = 0) {
    // A kind subgraph is acyclic iff no node reaches itself through an edge.
    for (const auto& e : g.edges) {
        if (e.kind != kind) continue;
        for (const auto& t : e.targets)
            for (const auto& s : e.sources)
                if (t == s || reaches(g, kind, t, s)) {
                    std::string msg = std::string(kind == EdgeKind::RefersTo
                                                      ? "refers"
                                                      : "transform") +
                                      " edges form a cycle through " + s;
                    if (line) throw ManifestFormatError(msg, line);
                    throw CycleError(msg);
                }
    }
}

void sort_edges(DocGraph& g) {
    std::sort(g.edges.begin(), g.edges.end(),
              [](const DocEdge& a, const DocEdge& b) {
                  return render_edge(a) < render_edge(b);
              });
}

std::vector<dsl::Document> class_diagram_docs(const DocGraph& g) {
    std::vector<dsl::Document> out;
    for (const auto& [id, node] : g.nodes)
        if (node.kind == DocKind::ClassDiagram) out.push_back(load_document(g, node));
    return out;
}

}  // namespace

std::string render_edge(const DocEdge& e) {
    std::ostringstream out;
    out << "edge " << (e.kind == EdgeKind::RefersTo ? "refers" : "transform") << ' ';
    for (std::size_t i = 0; i < e.sources.size(); ++i)
        out << (i ? "," : "") << escape_field(e.sources[i]);
    out << " -> ";
    for (std::size_t i = 0; i < e.targets.size(); ++i)
        out << (i ? "," : "") << escape_field(e.targets[i]);
    return out.str();
}

dsl::Document load_document(const DocGraph& g, const DocNode& node) {
    fs::path full = fs::path(g.manifest_dir()) / node.path;
    std::ifstream in(full);
    if (!in) throw IOError("cannot read " + full.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return dsl::parse(node.kind, buf.str(), node.path);
}

std::string add_document(DocGraph& g, const std::string& path, DocKind kind,
                         const std::string& author) {
    for (const auto& [id, node] : g.nodes)
        if (node.path == path) throw DuplicatePath(path);

    fs::path full = fs::path(g.manifest_dir()) / path;
    std::ifstream in(full);
    if (!in) throw IOError("cannot read " + full.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        dsl::parse(kind, buf.str(), path);
    } catch (const Error& e) {
        throw ParseFailure(path + ": " + e.what());
    }

    std::string stem = fs::path(path).stem().string();
    if (stem.empty()) stem = "doc";
    std::string id = stem;
    for (int i = 2; g.nodes.count(id); ++i) id = stem + "-" + std::to_string(i);

    DocNode node;
    node.id = id;
    node.kind = kind;
    node.path = path;
    node.author = author;
    node.created = g.now();
    node.updated = node.created;
    g.nodes.emplace(id, std::move(node));
    return id;
}

std::size_t link(DocGraph& g, EdgeKind kind, const std::vector<std::string>& sources,
                 const std::vector<std::string>& targets) {
    if (sources.empty() || targets.empty())
        throw std::invalid_argument("an edge needs sources and targets");
    for (const auto& id : sources) g.node(id);
    for (const auto& id : targets) g.node(id);

    DocEdge edge{kind, sources, targets};
    auto existing = std::find(g.edges.begin(), g.edges.end(), edge);
    if (existing == g.edges.end()) {
        DocGraph trial = g;  // atomic: reject without mutating
        trial.edges.push_back(edge);
        check_dag(trial, kind);
        g.edges.push_back(edge);
        sort_edges(g);
    }
    auto it = std::find(g.edges.begin(), g.edges.end(), edge);
    return static_cast<std::size_t>(it - g.edges.begin());
}

refine::RefinementVerdict validate_transform(DocGraph& g, std::size_t edge_index,
                                             const refine::StateMapping& mapping) {
    if (edge_index >= g.edges.size())
        throw UnknownNode("edge " + std::to_string(edge_index));
    const DocEdge edge = g.edges[edge_index];
    if (edge.kind != EdgeKind::Transform)
        throw std::invalid_argument("only transform edges are validated");

    auto kind_of = [&](const std::string& id) { return g.node(id).kind; };
    auto all_of_kind = [&](const std::vector<std::string>& ids, DocKind k) {
        return std::all_of(ids.begin(), ids.end(),
                           [&](const std::string& id) { return kind_of(id) == k; });
    };

    refine::RefinementVerdict combined;
    if (all_of_kind(edge.sources, DocKind::ClassDiagram) &&
        all_of_kind(edge.targets, DocKind::ClassDiagram)) {
        for (const auto& tgt : edge.targets) {
            dsl::Document new_doc = load_document(g, g.node(tgt));
            for (const auto& src : edge.sources) {
                dsl::Document old_doc = load_document(g, g.node(src));
                auto v = refine::refine_class_diagram(old_doc, new_doc);
                combined.accepted &= v.accepted;
                combined.violations.insert(combined.violations.end(),
                                           v.violations.begin(), v.violations.end());
                combined.notes.insert(combined.notes.end(), v.notes.begin(),
                                      v.notes.end());
                combined.checked_rules = v.checked_rules;
            }
        }
    } else if (all_of_kind(edge.sources, DocKind::StateDiagram) &&
               all_of_kind(edge.targets, DocKind::StateDiagram)) {
        for (const auto& tgt : edge.targets) {
            dsl::Document new_doc = load_document(g, g.node(tgt));
            for (const auto& src : edge.sources) {
                dsl::Document old_doc = load_document(g, g.node(src));
                auto v = refine::refine_state_diagram(old_doc, new_doc, mapping);
                combined.accepted &= v.accepted;
                combined.violations.insert(combined.violations.end(),
                                           v.violations.begin(), v.violations.end());
                combined.notes.insert(combined.notes.end(), v.notes.begin(),
                                      v.notes.end());
                combined.checked_rules = v.checked_rules;
            }
        }
    } else if (all_of_kind(edge.sources, DocKind::SequenceDiagram) &&
               all_of_kind(edge.targets, DocKind::StateDiagram)) {
        // The class context comes from the class diagrams the endpoints
        // refer to.
        std::vector<dsl::Document> cds;
        std::set<std::string> closure;
        std::vector<std::string> work(edge.sources);
        work.insert(work.end(), edge.targets.begin(), edge.targets.end());
        for (const auto& id : work) closure.insert(id);
        while (!work.empty()) {
            std::string cur = work.back();
            work.pop_back();
            for (const auto& e : g.edges) {
                if (e.kind != EdgeKind::RefersTo) continue;
                if (std::find(e.sources.begin(), e.sources.end(), cur) ==
                    e.sources.end())
                    continue;
                for (const auto& t : e.targets)
                    if (closure.insert(t).second) work.push_back(t);
            }
        }
        for (const auto& id : closure) {
            const DocNode& n = g.node(id);
            if (n.kind == DocKind::ClassDiagram) cds.push_back(load_document(g, n));
        }
        ClassTable table = sem::merge_class_tables(cds);

        for (const auto& tgt : edge.targets) {
            dsl::Document sd = load_document(g, g.node(tgt));
            for (const auto& src : edge.sources) {
                dsl::Document qd = load_document(g, g.node(src));
                auto v = refine::check_seq_against_state(qd, sd, table);
                combined.accepted &= v.accepted;
                combined.violations.insert(combined.violations.end(),
                                           v.violations.begin(), v.violations.end());
                combined.notes.insert(combined.notes.end(), v.notes.begin(),
                                      v.notes.end());
                combined.checked_rules = v.checked_rules;
            }
        }
    } else {
        throw UnsupportedTransformShape(
            "no technical step covers this combination of document kinds");
    }

    for (const auto& tgt : edge.targets) {
        DocNode& n = g.nodes.at(tgt);
        n.consistent = combined.accepted;
        n.violations = combined.violations;
    }
    return combined;
}

RedundancyResult mark_redundant(DocGraph& g, const std::string& node_id) {
    auto it = g.nodes.find(node_id);
    if (it == g.nodes.end()) throw UnknownNode(node_id);
    DocNode& node = it->second;
    RedundancyResult result;
    if (node.kind != DocKind::SequenceDiagram) {
        result.notes.push_back("redundancy is only decidable for sequence diagrams");
        return result;
    }
    dsl::Document qd = load_document(g, node);
    ClassTable table = sem::merge_class_tables(class_diagram_docs(g));

    bool any = false;
    for (const auto& [id, other] : g.nodes) {
        if (other.kind != DocKind::StateDiagram) continue;
        dsl::Document sd = load_document(g, other);
        try {
            auto v = refine::check_seq_against_state(qd, sd, table);
            if (v.accepted) {
                any = true;
                result.notes.push_back("covered by " + id);
                break;
            }
        } catch (const refine::AmbiguousLifeline&) {
            result.notes.push_back("ambiguous lifeline against " + id);
        }
    }
    node.redundant = any;
    result.redundant = any;
    return result;
}

void save(const DocGraph& g) {
    fs::path dir(g.manifest_dir());
    for (const auto& [id, node] : g.nodes) {
        if (!fs::exists(dir / node.path))
            throw IOError("document file missing: " + node.path);
    }

    std::ostringstream out;
    for (const auto& [id, node] : g.nodes) out << render_node(node) << '\n';
    std::vector<std::string> edge_lines;
    for (const auto& e : g.edges) edge_lines.push_back(render_edge(e));
    std::sort(edge_lines.begin(), edge_lines.end());
    for (const auto& line : edge_lines) out << line << '\n';

    fs::path tmp = fs::path(g.manifest_path).concat(".tmp");
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) throw IOError("cannot write " + tmp.string());
        f << out.str();
        if (!f.good()) throw IOError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, g.manifest_path, ec);
    if (ec) throw IOError("cannot replace " + g.manifest_path + ": " + ec.message());
}

DocGraph load(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IOError("cannot read " + manifest_path);
    DocGraph g = make_graph(manifest_path);

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> tokens;
        {
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
        }
        if (tokens[0] == "node") {
            if (tokens.size() != 8)
                throw ManifestFormatError("node record needs 8 fields", lineno);
            DocNode n;
            n.id = unescape_field(tokens[1], lineno);
            try {
                n.kind = dsl::kind_from_extension(tokens[2]);
            } catch (const dsl::UnknownKind&) {
                throw ManifestFormatError("unknown document kind " + tokens[2], lineno);
            }
            n.path = unescape_field(tokens[3], lineno);
            auto field = [&](const std::string& tok, const std::string& prefix) {
                if (tok.rfind(prefix, 0) != 0)
                    throw ManifestFormatError("expected " + prefix + "...", lineno);
                return tok.substr(prefix.size());
            };
            n.author = unescape_field(field(tokens[4], "author="), lineno);
            n.created = field(tokens[5], "created=");
            n.updated = field(tokens[6], "updated=");
            std::string flags = field(tokens[7], "flags=");
            auto parts = split(flags, ',');
            if (parts.size() != 5)
                throw ManifestFormatError("flags need 5 entries", lineno);
            auto flag = [&](const std::string& part, const std::string& prefix) {
                if (part.rfind(prefix, 0) != 0)
                    throw ManifestFormatError("expected " + prefix + "...", lineno);
                return part.substr(prefix.size());
            };
            n.validated = flag(parts[0], "v:") == "1";
            n.verified = flag(parts[1], "V:") == "1";
            n.tested = flag(parts[2], "t:") == "1";
            n.consistent = parse_tri(flag(parts[3], "c:"), lineno);
            n.redundant = parse_tri(flag(parts[4], "r:"), lineno);
            if (n.verified && n.kind == DocKind::Text)
                throw ManifestFormatError("text documents cannot be verified", lineno);
            if (n.tested)
                throw ManifestFormatError("no executable document kinds exist", lineno);
            if (g.nodes.count(n.id))
                throw ManifestFormatError("duplicate node id " + n.id, lineno);
            g.nodes.emplace(n.id, std::move(n));
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 5 || tokens[3] != "->")
                throw ManifestFormatError("edge record needs kind, sources -> targets",
                                          lineno);
            DocEdge e;
            if (tokens[1] == "refers") e.kind = EdgeKind::RefersTo;
            else if (tokens[1] == "transform") e.kind = EdgeKind::Transform;
            else throw ManifestFormatError("unknown edge kind " + tokens[1], lineno);
            for (const auto& s : split(tokens[2], ','))
                e.sources.push_back(unescape_field(s, lineno));
            for (const auto& t : split(tokens[4], ','))
                e.targets.push_back(unescape_field(t, lineno));
            for (const auto& id : e.sources)
                if (!g.nodes.count(id))
                    throw ManifestFormatError("edge references unknown node " + id,
                                              lineno);
            for (const auto& id : e.targets)
                if (!g.nodes.count(id))
                    throw ManifestFormatError("edge references unknown node " + id,
                                              lineno);
            g.edges.push_back(std::move(e));
        } else {
            throw ManifestFormatError("unknown record '" + tokens[0] + "'", lineno);
        }
    }
    check_dag(g, EdgeKind::RefersTo, 1);
    check_dag(g, EdgeKind::Transform, 1);
    sort_edges(g);
    return g;
}

}  // namespace sysmodel::graph
