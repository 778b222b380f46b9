// Command-line front end: document checking, bounded simulation,
// refinement checking, sequence-to-state synthesis and the persistent
// document graph.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sysmodel/dsl/parser.hpp"
#include "sysmodel/dsl/printer.hpp"
#include "sysmodel/graph/docgraph.hpp"
#include "sysmodel/refine/class_refinement.hpp"
#include "sysmodel/refine/state_refinement.hpp"
#include "sysmodel/refine/synthesis.hpp"
#include "sysmodel/refine/trace_refinement.hpp"
#include "sysmodel/sem/elaborate.hpp"
#include "sysmodel/sem/views.hpp"
#include "sysmodel/sim/stimuli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sysmodel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

struct Options {
    std::string workspace = ".";
    std::uint64_t seed = 0;
    std::size_t rounds = 8;
    std::size_t cap = 10000;
    std::string format = "text";

    bool structured() const { return format == "structured"; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

dsl::Document load_doc(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    if (!ext.empty() && ext.front() == '.') ext.erase(0, 1);
    dsl::DocKind kind = dsl::kind_from_extension(ext);
    return dsl::parse(kind, read_file(path), path);
}

std::vector<dsl::Document> load_docs(const std::vector<std::string>& paths) {
    std::vector<dsl::Document> docs;
    for (const auto& p : paths) docs.push_back(load_doc(p));
    return docs;
}

json findings_json(const ValidationReport& report) {
    json arr = json::array();
    for (const auto& f : report.findings) {
        arr.push_back({{"severity", f.severity == Severity::Error ? "error" : "warning"},
                       {"code", f.code},
                       {"doc", f.doc_id},
                       {"line", f.span.line},
                       {"col", f.span.col},
                       {"message", f.message}});
    }
    return arr;
}

// The canonical trace lines are the single source of truth; structured
// mode re-expresses each line as an object.
json trace_json(const std::string& canonical) {
    json arr = json::array();
    std::istringstream in(canonical);
    std::string line;
    while (std::getline(in, line)) {
        json ev;
        std::istringstream ls(line);
        std::string field;
        ls >> field;  // round=N
        ev["round"] = std::stoul(field.substr(6));
        ls >> field;  // obj=NAME
        ev["obj"] = field.substr(4);
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
        if (rest == "tick") {
            ev["event"] = "tick";
        } else {
            auto eq = rest.find('=');
            ev["event"] = rest.substr(0, eq);
            ev["value"] = rest.substr(eq + 1);
        }
        arr.push_back(std::move(ev));
    }
    return arr;
}

json verdict_json(const refine::RefinementVerdict& v) {
    json out;
    out["accepted"] = v.accepted;
    out["checked_rules"] = v.checked_rules;
    out["notes"] = v.notes;
    json viol = json::array();
    for (const auto& x : v.violations)
        viol.push_back({{"rule", x.rule},
                        {"doc", x.doc_id},
                        {"line", x.span.line},
                        {"col", x.span.col},
                        {"message", x.message}});
    out["violations"] = viol;
    if (v.witness) out["witness"] = trace_json(*v.witness);
    return out;
}

sem::Elaboration elaborate_paths(const std::vector<std::string>& paths,
                                 const std::string& init_path) {
    auto docs = load_docs(paths);
    sem::ElaborateOptions opts;
    if (!init_path.empty()) opts.initial_doc_id = init_path;
    return sem::elaborate(docs, {}, opts);
}

int cmd_check(const Options& opt, const std::vector<std::string>& paths,
              const std::string& init_path) {
    auto elab = elaborate_paths(paths, init_path);
    if (opt.structured())
        std::cout << json{{"findings", findings_json(elab.report)}}.dump(2) << '\n';
    else
        std::cout << elab.report.render();
    return elab.report.ok() ? kExitOk : kExitRejected;
}

int cmd_simulate(const Options& opt, const std::vector<std::string>& paths,
                 const std::string& init_path, const std::string& stimuli_path,
                 const std::string& policy_name, bool exhaustive) {
    auto elab = elaborate_paths(paths, init_path);
    if (!elab.ok()) {
        std::cerr << elab.report.render();
        return kExitInput;
    }
    std::vector<sim::Stimulus> stimuli;
    if (!stimuli_path.empty()) stimuli = sim::parse_stimuli(read_file(stimuli_path));

    if (exhaustive) {
        sim::RunSet runs = sim::enumerate_runs(elab.model, stimuli, opt.rounds, opt.cap);
        if (opt.structured()) {
            json out;
            out["rounds"] = opt.rounds;
            out["cap"] = opt.cap;
            out["count"] = runs.traces.size();
            out["truncated"] = runs.truncated;
            json arr = json::array();
            for (const auto& [text, trace] : runs.traces) arr.push_back(trace_json(text));
            out["traces"] = arr;
            std::cout << out.dump(2) << '\n';
        } else {
            std::cout << "# exhaustive rounds=" << opt.rounds << " cap=" << opt.cap
                      << '\n';
            std::cout << "# traces=" << runs.traces.size()
                      << " truncated=" << (runs.truncated ? 1 : 0) << '\n';
            std::size_t i = 0;
            for (const auto& [text, trace] : runs.traces)
                std::cout << "# trace " << i++ << '\n' << text;
        }
        return runs.truncated ? kExitLimit : kExitOk;
    }

    sim::SchedulerPolicy policy;
    std::ostringstream header;
    if (policy_name == "roundrobin") {
        policy = sim::RoundRobin{};
        header << "# policy=roundrobin rounds=" << opt.rounds;
    } else {
        policy = sim::SeededRandom{opt.seed};
        header << "# policy=seeded seed=" << opt.seed << " rounds=" << opt.rounds;
    }
    sim::RunTrace trace = sim::run(elab.model, stimuli, opt.rounds, policy);
    std::string text = sim::canonical_trace_text(trace);
    if (opt.structured()) {
        json out;
        out["policy"] = policy_name;
        if (policy_name != "roundrobin") out["seed"] = opt.seed;
        out["rounds"] = opt.rounds;
        out["events"] = trace_json(text);
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << header.str() << '\n' << text;
    }
    return kExitOk;
}

refine::StateMapping read_mapping(const std::string& path) {
    refine::StateMapping map;
    if (path.empty()) return map;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto c = line.find("//"); c != std::string::npos) line = line.substr(0, c);
        std::istringstream ls(line);
        std::string from, arrow, to;
        if (!(ls >> from)) continue;
        if (!(ls >> arrow >> to) || arrow != "->")
            throw Error("mapping line " + std::to_string(lineno) +
                        ": expected `new -> old`");
        map[from] = to;
    }
    return map;
}

int report_verdict(const Options& opt, const refine::RefinementVerdict& v) {
    if (opt.structured())
        std::cout << verdict_json(v).dump(2) << '\n';
    else
        std::cout << v.render();
    return v.accepted ? kExitOk : kExitRejected;
}

int cmd_refine(const Options& opt, const std::string& kind,
               const std::vector<std::string>& positional,
               const std::vector<std::string>& old_paths,
               const std::vector<std::string>& new_paths, const std::string& map_path,
               const std::string& stimuli_path, const std::string& init_old,
               const std::string& init_new) {
    if (kind == "cd" || kind == "sd") {
        if (positional.size() != 2)
            throw Error("refine --kind " + kind + " needs exactly two documents");
        dsl::Document old_doc = load_doc(positional[0]);
        dsl::Document new_doc = load_doc(positional[1]);
        refine::RefinementVerdict v =
            kind == "cd"
                ? refine::refine_class_diagram(old_doc, new_doc)
                : refine::refine_state_diagram(old_doc, new_doc, read_mapping(map_path));
        return report_verdict(opt, v);
    }
    if (kind == "trace") {
        if (old_paths.empty() || new_paths.empty())
            throw Error("refine --kind trace needs --old and --new document sets");
        auto abstract = elaborate_paths(old_paths, init_old);
        auto concrete = elaborate_paths(new_paths, init_new);
        if (!abstract.ok() || !concrete.ok()) {
            std::cerr << abstract.report.render() << concrete.report.render();
            return kExitInput;
        }
        std::vector<sim::Stimulus> stimuli;
        if (!stimuli_path.empty()) stimuli = sim::parse_stimuli(read_file(stimuli_path));
        auto v = refine::trace_refinement_check(abstract.model, concrete.model, stimuli,
                                                opt.rounds, opt.cap);
        return report_verdict(opt, v);
    }
    throw Error("unknown refine kind: " + kind);
}

int cmd_synthesize(const Options& opt, const std::vector<std::string>& paths,
                   const std::string& cls, const std::string& merge_name,
                   bool loop_fold, const std::string& out_path) {
    std::vector<dsl::Document> seqs;
    std::vector<dsl::Document> context;
    for (const auto& p : paths) {
        dsl::Document d = load_doc(p);
        if (d.kind == dsl::DocKind::SequenceDiagram)
            seqs.push_back(std::move(d));
        else
            context.push_back(std::move(d));
    }
    ClassTable table = sem::merge_class_tables(context);

    refine::SynthesisOptions sopts;
    sopts.target_class = cls;
    sopts.merge = merge_name == "labels" ? refine::MergeStrategy::ByExplicitStateLabels
                                         : refine::MergeStrategy::TrieByPrefix;
    sopts.loop_folding = loop_fold;
    dsl::Document sd = refine::synthesize_state_diagram(seqs, sopts, table);

    {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw Error("cannot write " + out_path);
        out << dsl::serialize(sd);
    }
    dsl::Document reread = load_doc(out_path);

    bool all_ok = true;
    json checks = json::array();
    std::ostringstream text;
    text << "states=" << reread.as_state_diagram().automaton.control_states.size()
         << '\n';
    for (const auto& qd : seqs) {
        auto v = refine::check_seq_against_state(qd, reread, table);
        all_ok &= v.accepted;
        checks.push_back({{"doc", qd.id}, {"accepted", v.accepted}});
        text << qd.id << ": " << (v.accepted ? "ACCEPTED" : "REJECTED") << '\n';
    }
    if (opt.structured()) {
        json out;
        out["output"] = out_path;
        out["states"] = reread.as_state_diagram().automaton.control_states.size();
        out["checks"] = checks;
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << text.str();
    }
    return all_ok ? kExitOk : kExitRejected;
}

std::string manifest_path(const Options& opt) {
    return (fs::path(opt.workspace) / "graph.manifest").string();
}

int cmd_graph_status(const Options& opt) {
    graph::DocGraph g = graph::load(manifest_path(opt));
    if (opt.structured()) {
        json nodes = json::array();
        for (const auto& [id, n] : g.nodes) {
            json jn{{"id", n.id},          {"kind", dsl::extension_of(n.kind)},
                    {"path", n.path},      {"author", n.author},
                    {"created", n.created}, {"updated", n.updated},
                    {"validated", n.validated}, {"verified", n.verified},
                    {"tested", n.tested}};
            jn["consistent"] = n.consistent ? json(*n.consistent) : json(nullptr);
            jn["redundant"] = n.redundant ? json(*n.redundant) : json(nullptr);
            nodes.push_back(std::move(jn));
        }
        json edges = json::array();
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const auto& e = g.edges[i];
            edges.push_back(
                {{"index", i},
                 {"kind", e.kind == graph::EdgeKind::RefersTo ? "refers" : "transform"},
                 {"sources", e.sources},
                 {"targets", e.targets}});
        }
        std::cout << json{{"nodes", nodes}, {"edges", edges}}.dump(2) << '\n';
        return kExitOk;
    }
    auto tri = [](const std::optional<bool>& v) { return !v ? "u" : (*v ? "1" : "0"); };
    std::cout << "nodes:\n";
    for (const auto& [id, n] : g.nodes)
        std::cout << "  " << n.id << ' ' << dsl::extension_of(n.kind) << ' ' << n.path
                  << " author=" << n.author << " v=" << n.validated
                  << " V=" << n.verified << " t=" << n.tested
                  << " c=" << tri(n.consistent) << " r=" << tri(n.redundant) << '\n';
    std::cout << "edges:\n";
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        std::cout << "  [" << i << "] " << graph::render_edge(g.edges[i]).substr(5)
                  << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantics kernel for a textual modeling language"};
    app.require_subcommand(1);

    Options opt;
    if (const char* ws = std::getenv("SYSMODEL_WORKSPACE")) opt.workspace = ws;
    app.add_option("--workspace", opt.workspace, "workspace root for graph commands");
    app.add_option("--seed", opt.seed, "scheduler seed");
    app.add_option("--rounds", opt.rounds, "simulation bound in rounds")
        ->check(CLI::PositiveNumber);
    app.add_option("--cap", opt.cap, "enumeration node cap")->check(CLI::PositiveNumber);
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* check = app.add_subcommand("check", "parse and check documents");
    check->fallthrough();
    std::vector<std::string> check_paths;
    std::string check_init;
    check->add_option("paths", check_paths, "document files")->required();
    check->add_option("--init", check_init, "object diagram for the initial objects");

    auto* simulate = app.add_subcommand("simulate", "run a bounded simulation");
    simulate->fallthrough();
    std::vector<std::string> sim_paths;
    std::string sim_init, sim_stimuli, sim_policy = "seeded";
    bool sim_exhaustive = false;
    simulate->add_option("paths", sim_paths, "model documents")->required();
    simulate->add_option("--init", sim_init, "object diagram for the initial objects");
    simulate->add_option("--stimuli", sim_stimuli, "stimuli file");
    simulate->add_option("--policy", sim_policy, "scheduler policy")
        ->check(CLI::IsMember({"seeded", "roundrobin"}));
    simulate->add_flag("--exhaustive", sim_exhaustive, "enumerate all runs");

    auto* refine_cmd = app.add_subcommand("refine", "check a refinement step");
    refine_cmd->fallthrough();
    std::string refine_kind, refine_map, refine_stimuli, refine_init_old, refine_init_new;
    std::vector<std::string> refine_pos, refine_old, refine_new;
    refine_cmd->add_option("--kind", refine_kind, "cd, sd or trace")->required();
    refine_cmd->add_option("docs", refine_pos, "old and new document (cd/sd kinds)");
    refine_cmd->add_option("--old", refine_old, "abstract model documents (trace kind)");
    refine_cmd->add_option("--new", refine_new, "concrete model documents (trace kind)");
    refine_cmd->add_option("--map", refine_map, "state mapping file (sd kind)");
    refine_cmd->add_option("--stimuli", refine_stimuli, "stimuli file (trace kind)");
    refine_cmd->add_option("--init-old", refine_init_old, "object diagram, old model");
    refine_cmd->add_option("--init-new", refine_init_new, "object diagram, new model");

    auto* synth =
        app.add_subcommand("synthesize", "synthesize a state diagram from scenarios");
    synth->fallthrough();
    std::vector<std::string> synth_paths;
    std::string synth_class, synth_merge = "trie", synth_out;
    bool synth_fold = false;
    synth->add_option("paths", synth_paths, "sequence diagrams plus class diagrams")
        ->required();
    synth->add_option("--class", synth_class, "target class")->required();
    synth->add_option("--merge", synth_merge, "merge strategy")
        ->check(CLI::IsMember({"trie", "labels"}));
    synth->add_flag("--loop-fold", synth_fold, "fold repeated letters into self-loops");
    synth->add_option("-o,--out", synth_out, "output .sd file")->required();

    auto* graph_cmd = app.add_subcommand("graph", "manage the document graph");
    graph_cmd->fallthrough();
    graph_cmd->require_subcommand(1);
    auto* g_init = graph_cmd->add_subcommand("init", "create an empty graph");
    g_init->fallthrough();
    auto* g_add = graph_cmd->add_subcommand("add", "add a document");
    g_add->fallthrough();
    std::string add_path, add_author = "unknown";
    g_add->add_option("path", add_path, "document path relative to the workspace")
        ->required();
    g_add->add_option("--author", add_author, "author name");
    auto* g_link = graph_cmd->add_subcommand("link", "add an edge");
    g_link->fallthrough();
    std::string link_kind;
    std::vector<std::string> link_from, link_to;
    g_link->add_option("kind", link_kind, "refers or transform")
        ->required()
        ->check(CLI::IsMember({"refers", "transform"}));
    g_link->add_option("--from", link_from, "source node ids")->required();
    g_link->add_option("--to", link_to, "target node ids")->required();
    auto* g_validate = graph_cmd->add_subcommand("validate", "validate a transform edge");
    g_validate->fallthrough();
    std::size_t validate_index = 0;
    std::string validate_map;
    g_validate->add_option("edge", validate_index, "edge index from `graph status`")
        ->required();
    g_validate->add_option("--map", validate_map, "state mapping file");
    auto* g_status = graph_cmd->add_subcommand("status", "print nodes and edges");
    g_status->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(opt, check_paths, check_init);
        if (simulate->parsed())
            return cmd_simulate(opt, sim_paths, sim_init, sim_stimuli, sim_policy,
                                sim_exhaustive);
        if (refine_cmd->parsed())
            return cmd_refine(opt, refine_kind, refine_pos, refine_old, refine_new,
                              refine_map, refine_stimuli, refine_init_old,
                              refine_init_new);
        if (synth->parsed())
            return cmd_synthesize(opt, synth_paths, synth_class, synth_merge, synth_fold,
                                  synth_out);
        if (graph_cmd->parsed()) {
            if (g_init->parsed()) {
                std::string path = manifest_path(opt);
                if (fs::exists(path)) throw Error("workspace already initialized");
                graph::save(graph::make_graph(path));
                std::cout << "initialized " << path << '\n';
                return kExitOk;
            }
            if (g_add->parsed()) {
                graph::DocGraph g = graph::load(manifest_path(opt));
                std::string ext = fs::path(add_path).extension().string();
                if (!ext.empty() && ext.front() == '.') ext.erase(0, 1);
                std::string id = graph::add_document(
                    g, add_path, dsl::kind_from_extension(ext), add_author);
                graph::save(g);
                std::cout << id << '\n';
                return kExitOk;
            }
            if (g_link->parsed()) {
                graph::DocGraph g = graph::load(manifest_path(opt));
                auto kind = link_kind == "refers" ? graph::EdgeKind::RefersTo
                                                  : graph::EdgeKind::Transform;
                std::size_t index = graph::link(g, kind, link_from, link_to);
                graph::save(g);
                std::cout << "edge " << index << '\n';
                return kExitOk;
            }
            if (g_validate->parsed()) {
                graph::DocGraph g = graph::load(manifest_path(opt));
                auto v = graph::validate_transform(g, validate_index,
                                                   read_mapping(validate_map));
                graph::save(g);
                return report_verdict(opt, v);
            }
            if (g_status->parsed()) return cmd_graph_status(opt);
        }
    } catch (const ExplosionLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitLimit;
    } catch (const graph::CycleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRejected;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
