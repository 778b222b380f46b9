#include <doctest.h>

#include "support/doc_gen.hpp"
#include "support/generators.hpp"
#include "sysmodel/dsl/parser.hpp"
#include "sysmodel/dsl/printer.hpp"

using namespace sysmodel;
using namespace sysmodel::dsl;

TEST_CASE("class diagram parsing") {
    SUBCASE("minimal class") {
        auto d = parse(DocKind::ClassDiagram, "class A { attr x: Int }", "a.cd");
        const auto& body = d.as_class_diagram();
        REQUIRE(body.classes.size() == 1);
        CHECK(body.classes[0].name == "A");
        REQUIRE(body.classes[0].attrs.size() == 1);
        CHECK(body.classes[0].attrs[0].type == ValueType::Int);
    }

    SUBCASE("missing type is a syntax error at the right position") {
        try {
            parse(DocKind::ClassDiagram, "class A { attr x: }", "a.cd");
            FAIL("expected SyntaxError");
        } catch (const SyntaxError& e) {
            CHECK(e.line == 1);
            CHECK(e.col == 19);
            CHECK(!e.expected.empty());
        }
    }

    SUBCASE("full class with inheritance, methods, invariants, assocs") {
        const char* text =
            "class Account {\n"
            "  attr balance: Int\n"
            "  method deposit(amount: Int): Bool\n"
            "  invariant balance >= 0\n"
            "}\n"
            "class Savings extends Account {\n"
            "  attr rate: Int\n"
            "}\n"
            "assoc owns: Account -> Savings\n";
        auto d = parse(DocKind::ClassDiagram, text, "b.cd");
        const auto& body = d.as_class_diagram();
        REQUIRE(body.classes.size() == 2);
        CHECK(body.classes[1].parent == "Account");
        REQUIRE(body.assocs.size() == 1);
        CHECK(body.assocs[0].source == "Account");
    }

    SUBCASE("duplicate class name") {
        CHECK_THROWS_AS(parse(DocKind::ClassDiagram, "class A {}\nclass A {}", "a.cd"),
                        DuplicateName);
    }

    SUBCASE("duplicate method name (no overloading)") {
        CHECK_THROWS_AS(parse(DocKind::ClassDiagram,
                              "class A { method f(): Int; method f(x: Int): Int }",
                              "a.cd"),
                        DuplicateName);
    }

    SUBCASE("semicolons work as statement ends") {
        auto d = parse(DocKind::ClassDiagram, "class A { attr x: Int; attr y: Bool }",
                       "a.cd");
        CHECK(d.as_class_diagram().classes[0].attrs.size() == 2);
    }
}

TEST_CASE("state diagram parsing") {
    const char* text =
        "statemachine Account {\n"
        "  states Idle, Active\n"
        "  initial Idle\n"
        "  trans Idle -> Active on open(amount) if amount > 0 / balance = amount, "
        "emit ack(amount) to @env\n"
        "  trans Active -> Active on deposit(amount) / balance = balance + amount\n"
        "}\n";
    auto d = parse(DocKind::StateDiagram, text, "a.sd");
    const Automaton& a = d.as_state_diagram().automaton;
    CHECK(a.owner_class == "Account");
    CHECK(a.control_states == std::vector<std::string>{"Idle", "Active"});
    CHECK(a.initial_controls == std::vector<std::string>{"Idle"});
    REQUIRE(a.transitions.size() == 2);
    CHECK(a.transitions[0].guard);
    CHECK(a.transitions[0].assignments().size() == 1);
    CHECK(a.transitions[0].emits().size() == 1);

    SUBCASE("unknown state in a transition") {
        CHECK_THROWS_AS(parse(DocKind::StateDiagram,
                              "statemachine A { states X; initial X; trans X -> Y on f() }",
                              "b.sd"),
                        SyntaxError);
    }
    SUBCASE("initial must be declared") {
        CHECK_THROWS_AS(
            parse(DocKind::StateDiagram, "statemachine A { states X; initial Z }", "b.sd"),
            SyntaxError);
    }
}

TEST_CASE("sequence diagram parsing") {
    const char* text =
        "sequence Deposit {\n"
        "  objects a: Account, b: Bank\n"
        "  env -> a : open(5)\n"
        "  state a: Active\n"
        "  a -> b : credit(5, \"note\")\n"
        "  b -> env : done()\n"
        "}\n";
    auto d = parse(DocKind::SequenceDiagram, text, "a.qd");
    const auto& body = d.as_sequence_diagram();
    CHECK(body.name == "Deposit");
    REQUIRE(body.lifelines.size() == 2);
    CHECK(body.events().size() == 3);
    CHECK(body.steps.size() == 4);

    SUBCASE("unknown role rejected") {
        CHECK_THROWS_AS(parse(DocKind::SequenceDiagram,
                              "sequence S { objects a: A\n a -> ghost : f() }", "b.qd"),
                        SyntaxError);
    }
    SUBCASE("env needs no declaration") {
        auto ok = parse(DocKind::SequenceDiagram,
                        "sequence S { objects a: A\n env -> a : f(-3) }", "b.qd");
        auto args = ok.as_sequence_diagram().events()[0]->args;
        REQUIRE(args.size() == 1);
        CHECK(std::get<std::int64_t>(args[0]) == -3);
    }
}

TEST_CASE("object diagram parsing") {
    const char* text =
        "objects {\n"
        "  acc: Account { balance = 10, owner = @alice }\n"
        "  alice: Person {}\n"
        "  creatable acc2: Account by acc\n"
        "  creatable acc3: Account by env\n"
        "  link owns alice -> acc\n"
        "}\n";
    auto d = parse(DocKind::ObjectDiagram, text, "w.od");
    const auto& body = d.as_object_diagram();
    REQUIRE(body.objects.size() == 2);
    CHECK(body.objects[0].bindings.size() == 2);
    REQUIRE(body.creatables.size() == 2);
    CHECK(body.creatables[0].owner == "acc");
    CHECK(body.creatables[1].owner == "env");
    REQUIRE(body.links.size() == 1);

    SUBCASE("link endpoints must be declared") {
        CHECK_THROWS_AS(
            parse(DocKind::ObjectDiagram, "objects { link owns a -> b }", "w.od"),
            SyntaxError);
    }
    SUBCASE("duplicate object id") {
        CHECK_THROWS_AS(
            parse(DocKind::ObjectDiagram, "objects { a: A {}\n a: B {} }", "w.od"),
            DuplicateName);
    }
}

TEST_CASE("text documents pass through") {
    auto d = parse(DocKind::Text, "anything at all {", "note.txt");
    CHECK(d.as_text().text == "anything at all {");
    CHECK(serialize(d) == "anything at all {");
}

TEST_CASE("unknown extension") {
    CHECK_THROWS_AS(kind_from_extension("pdf"), UnknownKind);
}

TEST_CASE("serialization is canonical") {
    SUBCASE("empty class body") {
        auto d = parse(DocKind::ClassDiagram, "class   A{}", "a.cd");
        CHECK(serialize(d) == "class A {\n}\n");
    }
    SUBCASE("whitespace-only differences disappear") {
        auto a = parse(DocKind::ClassDiagram, "class A {attr x:Int}", "a.cd");
        auto b = parse(DocKind::ClassDiagram, "class A {\n\n  attr x : Int\n}\n", "a.cd");
        CHECK(serialize(a) == serialize(b));
    }
}

TEST_CASE("round-trip: parse(serialize(d)) has an equal body") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        testgen::Rng rng(seed);
        dsl::Document d = testgen::random_document(rng);
        std::string text = serialize(d);
        CAPTURE(text);
        dsl::Document back = parse(d.kind, text, d.id);
        CHECK(body_equal(d.body, back.body));
        // And serialization is a fixpoint from there on.
        CHECK(serialize(back) == text);
    }
}

TEST_CASE("parse of serialize of parse equals parse") {
    const char* text =
        "statemachine  Account{\n"
        "  states Idle,Active;initial Idle\n"
        "  trans Idle->Active on open( amount ) if amount>0 / balance=amount\n"
        "}";
    auto first = parse(DocKind::StateDiagram, text, "x.sd");
    auto second = parse(DocKind::StateDiagram, serialize(first), "x.sd");
    CHECK(body_equal(first.body, second.body));
}

TEST_CASE("error spans stay inside the source") {
    auto inputs = {
        "class A { attr x: }",
        "class A { attr x: Int\n  method : Int\n}",
        "statemachine A { states X\n initial Y\n}",
        "sequence S { objects a: A\n a -> : f() }",
    };
    DocKind kinds[] = {DocKind::ClassDiagram, DocKind::ClassDiagram,
                       DocKind::StateDiagram, DocKind::SequenceDiagram};
    int i = 0;
    for (const char* text : inputs) {
        int lines = 1;
        for (const char* p = text; *p; ++p) lines += *p == '\n';
        try {
            parse(kinds[i++], text, "x");
            FAIL("expected SyntaxError");
        } catch (const SyntaxError& e) {
            CHECK(e.line >= 1);
            CHECK(e.line <= lines);
            CHECK(e.col >= 1);
        }
    }
}

TEST_CASE("parsing is deterministic") {
    const char* text = "class A { attr x: Int }\nclass B extends A {}\n";
    auto a = parse(DocKind::ClassDiagram, text, "a.cd");
    auto b = parse(DocKind::ClassDiagram, text, "a.cd");
    CHECK(body_equal(a.body, b.body));
    CHECK(serialize(a) == serialize(b));
}
