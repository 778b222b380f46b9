#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support/generators.hpp"
#include "sysmodel/graph/docgraph.hpp"

using namespace sysmodel;
using namespace sysmodel::graph;
namespace fs = std::filesystem;

namespace {

struct TempWorkspace {
    fs::path dir;

    explicit TempWorkspace(const std::string& tag) {
        dir = fs::temp_directory_path() / ("sysmodel-test-" + tag);
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempWorkspace() { fs::remove_all(dir); }

    std::string manifest() const { return (dir / "graph.manifest").string(); }

    void write(const std::string& rel, const std::string& text) const {
        fs::create_directories((dir / rel).parent_path());
        std::ofstream out(dir / rel);
        out << text;
    }
};

// Fixed clock so manifests are byte-stable in tests.
DocGraph fresh_graph(const TempWorkspace& ws) {
    DocGraph g = make_graph(ws.manifest());
    g.now = [] { return std::string("2001-02-03T04:05:06Z"); };
    return g;
}

const char* kCd =
    "class Account {\n"
    "  attr balance: Int\n"
    "  method open(amount: Int): Bool\n"
    "  method ack(amount: Int): Bool\n"
    "  method close(): Bool\n"
    "}\n";

const char* kSd =
    "statemachine Account {\n"
    "  states Idle, Active\n"
    "  initial Idle\n"
    "  trans Idle -> Active on open(amount) / emit ack(amount) to @env\n"
    "  trans Active -> Idle on close()\n"
    "}\n";

const char* kQd =
    "sequence Open {\n"
    "  objects a: Account\n"
    "  env -> a : open(5)\n"
    "  a -> env : ack(5)\n"
    "}\n";

bool graph_equal(const DocGraph& a, const DocGraph& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size())
        return false;
    for (const auto& [id, na] : a.nodes) {
        auto it = b.nodes.find(id);
        if (it == b.nodes.end()) return false;
        const DocNode& nb = it->second;
        if (na.kind != nb.kind || na.path != nb.path || na.author != nb.author ||
            na.created != nb.created || na.updated != nb.updated ||
            na.validated != nb.validated || na.verified != nb.verified ||
            na.tested != nb.tested || na.consistent != nb.consistent ||
            na.redundant != nb.redundant)
            return false;
    }
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        if (!(a.edges[i] == b.edges[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("add_document") {
    TempWorkspace ws("add");
    DocGraph g = fresh_graph(ws);
    ws.write("account.cd", kCd);

    SUBCASE("fresh node starts with every flag down") {
        std::string id = add_document(g, "account.cd", dsl::DocKind::ClassDiagram, "rb");
        CHECK(id == "account");
        const DocNode& n = g.node(id);
        CHECK(!n.validated);
        CHECK(!n.verified);
        CHECK(!n.tested);
        CHECK(!n.consistent);
        CHECK(!n.redundant);
        CHECK(n.created == "2001-02-03T04:05:06Z");
    }

    SUBCASE("parse failures leave the graph unchanged") {
        ws.write("broken.cd", "class {");
        CHECK_THROWS_AS(add_document(g, "broken.cd", dsl::DocKind::ClassDiagram, "rb"),
                        ParseFailure);
        CHECK(g.nodes.empty());
    }

    SUBCASE("re-adding the same path is rejected") {
        add_document(g, "account.cd", dsl::DocKind::ClassDiagram, "rb");
        CHECK_THROWS_AS(add_document(g, "account.cd", dsl::DocKind::ClassDiagram, "rb"),
                        DuplicatePath);
    }

    SUBCASE("ids derive from stems and stay unique") {
        ws.write("sub/account.cd", kCd);
        std::string first = add_document(g, "account.cd", dsl::DocKind::ClassDiagram, "rb");
        std::string second =
            add_document(g, "sub/account.cd", dsl::DocKind::ClassDiagram, "rb");
        CHECK(first == "account");
        CHECK(second == "account-2");
    }
}

TEST_CASE("link") {
    TempWorkspace ws("link");
    DocGraph g = fresh_graph(ws);
    ws.write("a.cd", kCd);
    ws.write("a.sd", kSd);
    ws.write("o.qd", kQd);
    ws.write("p.qd", kQd);
    add_document(g, "a.cd", dsl::DocKind::ClassDiagram, "rb");
    add_document(g, "a.sd", dsl::DocKind::StateDiagram, "rb");
    add_document(g, "o.qd", dsl::DocKind::SequenceDiagram, "rb");
    add_document(g, "p.qd", dsl::DocKind::SequenceDiagram, "rb");

    SUBCASE("refers edge") {
        link(g, EdgeKind::RefersTo, {"a"}, {"a-2"});
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0].kind == EdgeKind::RefersTo);
    }

    SUBCASE("multi-source transform edge") {
        std::size_t idx = link(g, EdgeKind::Transform, {"o", "p"}, {"a-2"});
        CHECK(g.edges[idx].sources == std::vector<std::string>{"o", "p"});
    }

    SUBCASE("self-loop is a cycle") {
        CHECK_THROWS_AS(link(g, EdgeKind::Transform, {"a"}, {"a"}), CycleError);
        CHECK(g.edges.empty());
    }

    SUBCASE("two-edge cycle is refused atomically") {
        link(g, EdgeKind::RefersTo, {"a"}, {"a-2"});
        CHECK_THROWS_AS(link(g, EdgeKind::RefersTo, {"a-2"}, {"a"}), CycleError);
        CHECK(g.edges.size() == 1);
    }

    SUBCASE("the two edge kinds have independent subgraphs") {
        link(g, EdgeKind::RefersTo, {"a"}, {"a-2"});
        // The opposite direction is fine for the other kind.
        CHECK_NOTHROW(link(g, EdgeKind::Transform, {"a-2"}, {"a"}));
    }

    SUBCASE("unknown endpoints") {
        CHECK_THROWS_AS(link(g, EdgeKind::RefersTo, {"ghost"}, {"a"}), UnknownNode);
    }

    SUBCASE("re-adding an edge is a no-op") {
        std::size_t first = link(g, EdgeKind::RefersTo, {"a"}, {"a-2"});
        std::size_t second = link(g, EdgeKind::RefersTo, {"a"}, {"a-2"});
        CHECK(first == second);
        CHECK(g.edges.size() == 1);
    }
}

TEST_CASE("validate_transform") {
    TempWorkspace ws("validate");
    DocGraph g = fresh_graph(ws);
    ws.write("old.cd", kCd);
    ws.write("new.cd", std::string(kCd) + "class Person {}\n");
    ws.write("bad.cd", "class Account {\n  attr balance: Int\n}\n");
    ws.write("a.sd", kSd);
    ws.write("o.qd", kQd);
    ws.write("w.od", "objects { a: Account {} }\n");
    add_document(g, "old.cd", dsl::DocKind::ClassDiagram, "rb");
    add_document(g, "new.cd", dsl::DocKind::ClassDiagram, "rb");
    add_document(g, "bad.cd", dsl::DocKind::ClassDiagram, "rb");
    add_document(g, "a.sd", dsl::DocKind::StateDiagram, "rb");
    add_document(g, "o.qd", dsl::DocKind::SequenceDiagram, "rb");
    add_document(g, "w.od", dsl::DocKind::ObjectDiagram, "rb");

    SUBCASE("additive cd step sets consistent=true") {
        std::size_t e = link(g, EdgeKind::Transform, {"old"}, {"new"});
        auto v = validate_transform(g, e);
        CHECK(v.accepted);
        CHECK(g.node("new").consistent == true);
    }

    SUBCASE("deleting cd step sets consistent=false and stores violations") {
        std::size_t e = link(g, EdgeKind::Transform, {"old"}, {"bad"});
        auto v = validate_transform(g, e);
        CHECK(!v.accepted);
        CHECK(g.node("bad").consistent == false);
        CHECK(!g.node("bad").violations.empty());
    }

    SUBCASE("sequence-to-state step resolves the class table over refers-to") {
        link(g, EdgeKind::RefersTo, {"o"}, {"old"});
        std::size_t e = link(g, EdgeKind::Transform, {"o"}, {"a"});
        auto v = validate_transform(g, e);
        CHECK(v.accepted);
        CHECK(g.node("a").consistent == true);
    }

    SUBCASE("shapes outside the three technical steps are unsupported") {
        std::size_t e = link(g, EdgeKind::Transform, {"w"}, {"o"});
        CHECK_THROWS_AS(validate_transform(g, e), UnsupportedTransformShape);
    }

    SUBCASE("refers edges are not validated") {
        std::size_t e = link(g, EdgeKind::RefersTo, {"o"}, {"old"});
        CHECK_THROWS_AS(validate_transform(g, e), std::invalid_argument);
    }

    SUBCASE("documents on disk are never modified") {
        std::size_t e = link(g, EdgeKind::Transform, {"old"}, {"new"});
        auto before = fs::last_write_time(ws.dir / "new.cd");
        validate_transform(g, e);
        CHECK(fs::last_write_time(ws.dir / "new.cd") == before);
    }
}

TEST_CASE("mark_redundant") {
    TempWorkspace ws("redundant");
    DocGraph g = fresh_graph(ws);
    ws.write("a.cd", kCd);
    ws.write("a.sd", kSd);
    ws.write("path.qd", kQd);
    ws.write("stray.qd",
             "sequence Stray { objects a: Account\n  env -> a : close()\n}\n");
    add_document(g, "a.cd", dsl::DocKind::ClassDiagram, "rb");
    add_document(g, "a.sd", dsl::DocKind::StateDiagram, "rb");
    add_document(g, "path.qd", dsl::DocKind::SequenceDiagram, "rb");
    add_document(g, "stray.qd", dsl::DocKind::SequenceDiagram, "rb");

    SUBCASE("a scenario covered by a state diagram is redundant") {
        auto r = mark_redundant(g, "path");
        CHECK(r.redundant == true);
        CHECK(g.node("path").redundant == true);
    }
    SUBCASE("a scenario no state diagram accepts is not redundant") {
        auto r = mark_redundant(g, "stray");
        CHECK(r.redundant == false);
        CHECK(g.node("stray").redundant == false);
    }
    SUBCASE("other kinds stay undetermined with a note") {
        auto r = mark_redundant(g, "a");
        CHECK(!r.redundant.has_value());
        CHECK(!g.node("a").redundant.has_value());
        CHECK(!r.notes.empty());
    }
}

TEST_CASE("save and load") {
    TempWorkspace ws("saveload");
    ws.write("a.cd", kCd);
    ws.write("a.sd", kSd);
    ws.write("o.qd", kQd);

    SUBCASE("empty graph round-trips") {
        DocGraph g = fresh_graph(ws);
        save(g);
        DocGraph back = load(ws.manifest());
        CHECK(graph_equal(g, back));
    }

    SUBCASE("populated graph round-trips structurally") {
        DocGraph g = fresh_graph(ws);
        add_document(g, "a.cd", dsl::DocKind::ClassDiagram, "ruth b");
        add_document(g, "a.sd", dsl::DocKind::StateDiagram, "rb");
        add_document(g, "o.qd", dsl::DocKind::SequenceDiagram, "rb");
        link(g, EdgeKind::RefersTo, {"a-2"}, {"a"});
        link(g, EdgeKind::Transform, {"o"}, {"a-2"});
        std::size_t e = link(g, EdgeKind::Transform, {"a"}, {"a-2"});
        (void)e;
        g.nodes.at("o").redundant = true;
        g.nodes.at("a").consistent = false;
        save(g);
        DocGraph back = load(ws.manifest());
        CHECK(graph_equal(g, back));
        // Saving the loaded graph reproduces the manifest byte for byte.
        save(back);
        std::ifstream in(ws.manifest());
        std::stringstream buf;
        buf << in.rdbuf();
        std::string once = buf.str();
        save(back);
        std::ifstream in2(ws.manifest());
        std::stringstream buf2;
        buf2 << in2.rdbuf();
        CHECK(once == buf2.str());
    }

    SUBCASE("manifest with an unknown edge kind") {
        std::ofstream out(ws.manifest());
        out << "edge sideways a -> b\n";
        out.close();
        try {
            load(ws.manifest());
            FAIL("expected ManifestFormatError");
        } catch (const ManifestFormatError& e) {
            CHECK(e.line == 1);
        }
    }

    SUBCASE("manifest with an unparseable record") {
        std::ofstream out(ws.manifest());
        out << "blob something\n";
        out.close();
        CHECK_THROWS_AS(load(ws.manifest()), ManifestFormatError);
    }

    SUBCASE("verified text documents are rejected at load") {
        ws.write("n.txt", "notes");
        std::ofstream out(ws.manifest());
        out << "node n txt n.txt author=rb created=2001-02-03T04:05:06Z "
               "updated=2001-02-03T04:05:06Z flags=v:0,V:1,t:0,c:u,r:u\n";
        out.close();
        CHECK_THROWS_AS(load(ws.manifest()), ManifestFormatError);
    }

    SUBCASE("dangling document files fail the save") {
        DocGraph g = fresh_graph(ws);
        add_document(g, "a.cd", dsl::DocKind::ClassDiagram, "rb");
        fs::remove(ws.dir / "a.cd");
        CHECK_THROWS_AS(save(g), IOError);
    }
}

TEST_CASE("random graphs round-trip") {
    TempWorkspace ws("random");
    const char* texts[] = {kCd, kSd, kQd, "objects { a: Account {} }\n", "free text\n"};
    const dsl::DocKind kinds[] = {dsl::DocKind::ClassDiagram, dsl::DocKind::StateDiagram,
                                  dsl::DocKind::SequenceDiagram,
                                  dsl::DocKind::ObjectDiagram, dsl::DocKind::Text};

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        testgen::Rng rng(seed);
        fs::remove(ws.manifest());
        DocGraph g = fresh_graph(ws);
        const int n = rng.range(2, 10);
        std::vector<std::string> ids;
        for (int i = 0; i < n; ++i) {
            int k = rng.range(0, 4);
            std::string rel = "doc" + std::to_string(seed) + "-" + std::to_string(i) +
                              "." + dsl::extension_of(kinds[k]);
            ws.write(rel, texts[k]);
            std::string id = add_document(g, rel, kinds[k],
                                          rng.chance(30) ? "a b" : "solo");
            if (rng.chance(40)) g.nodes.at(id).validated = true;
            if (kinds[k] != dsl::DocKind::Text && rng.chance(20))
                g.nodes.at(id).verified = true;
            if (rng.chance(25)) g.nodes.at(id).consistent = rng.chance(50);
            if (rng.chance(25)) g.nodes.at(id).redundant = rng.chance(50);
            ids.push_back(id);
        }
        // Edges point from lower to higher indices: a DAG by construction.
        const int edges = rng.range(0, 12);
        for (int e = 0; e < edges; ++e) {
            std::size_t a = rng.below(ids.size() - 1);
            std::size_t b = a + 1 + rng.below(ids.size() - a - 1);
            EdgeKind kind = rng.chance(50) ? EdgeKind::RefersTo : EdgeKind::Transform;
            std::vector<std::string> sources{ids[a]};
            if (rng.chance(30) && a >= 1) sources.push_back(ids[a - 1]);
            try {
                link(g, kind, sources, {ids[b]});
            } catch (const CycleError&) {
                // multi-source edges can still close a cycle; skip those
            }
        }
        save(g);
        DocGraph back = load(ws.manifest());
        CAPTURE(seed);
        CHECK(graph_equal(g, back));
    }
}
