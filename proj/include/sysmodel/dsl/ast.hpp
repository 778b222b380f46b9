#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sysmodel/core/automaton.hpp"
#include "sysmodel/core/class_table.hpp"
#include "sysmodel/core/errors.hpp"
#include "sysmodel/core/span.hpp"
#include "sysmodel/core/value.hpp"

namespace sysmodel::dsl {

enum class DocKind { ClassDiagram, ObjectDiagram, StateDiagram, SequenceDiagram, Text };

std::string kind_name(DocKind k);

/// Kind for a file extension token ("cd", "od", "sd", "qd", "txt").
/// Throws UnknownKind.
DocKind kind_from_extension(const std::string& ext);
std::string extension_of(DocKind k);

struct UnknownKind : Error {
    explicit UnknownKind(const std::string& what) : Error("unknown document kind: " + what) {}
};

struct SyntaxError : Error {
    SyntaxError(std::string msg, int line, int col, std::vector<std::string> expected = {})
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line(line), col(col), expected(std::move(expected)) {}
    int line;
    int col;
    std::vector<std::string> expected;
};

struct DuplicateName : Error {
    DuplicateName(const std::string& name, int line, int col)
        : Error("duplicate name '" + name + "' at " + std::to_string(line) + ":" +
                std::to_string(col)),
          name(name), line(line), col(col) {}
    std::string name;
    int line;
    int col;
};

// --- class diagrams ------------------------------------------------------

struct AttrDecl {
    std::string name;
    ValueType type;
    Span span;
};

struct MethodDecl {
    std::string name;
    std::vector<Param> params;
    ValueType result;
    Span span;
};

struct InvariantDecl {
    ExprPtr expr;
    Span span;
};

struct ClassDecl {
    std::string name;
    std::optional<std::string> parent;
    std::vector<AttrDecl> attrs;
    std::vector<MethodDecl> methods;
    std::vector<InvariantDecl> invariants;
    Span span;
};

struct AssocDecl {
    std::string name;
    std::string source;
    std::string target;
    Span span;
};

struct ClassDiagramBody {
    std::vector<ClassDecl> classes;
    std::vector<AssocDecl> assocs;

    const ClassDecl* find_class(const std::string& name) const;
    const AssocDecl* find_assoc(const std::string& name) const;
};

// --- object diagrams -----------------------------------------------------

struct BindingDecl {
    std::string attribute;
    Value value;
    Span span;
};

struct ObjectDecl {
    std::string name;
    std::string cls;
    std::vector<BindingDecl> bindings;
    Span span;
};

/// `creatable id: Class by owner` — the identifier pool entry owned by
/// `owner` (an object name or `env`).
struct CreatableDecl {
    std::string name;
    std::string cls;
    std::string owner;
    Span span;
};

struct LinkDecl {
    std::string assoc;
    std::string source;
    std::string target;
    Span span;
};

struct ObjectDiagramBody {
    std::vector<ObjectDecl> objects;
    std::vector<CreatableDecl> creatables;
    std::vector<LinkDecl> links;
};

// --- state diagrams ------------------------------------------------------

struct StateDiagramBody {
    Automaton automaton;
    std::map<std::string, Span> state_spans;
    Span span;
};

// --- sequence diagrams ---------------------------------------------------

struct LifelineDecl {
    std::string role;
    std::string cls;
    Span span;
};

struct EventDecl {
    std::string from;
    std::string to;
    std::string selector;
    std::vector<Value> args;
    Span span;
};

/// Lifeline state label: asserts the role is in the named control state at
/// this point of the scenario.
struct StateLabelDecl {
    std::string role;
    std::string label;
    Span span;
};

using SequenceStep = std::variant<EventDecl, StateLabelDecl>;

struct SequenceDiagramBody {
    std::string name;
    std::vector<LifelineDecl> lifelines;
    std::vector<SequenceStep> steps;

    const LifelineDecl* find_lifeline(const std::string& role) const;
    std::vector<const EventDecl*> events() const;
};

struct TextBody {
    std::string text;
};

using Body = std::variant<ClassDiagramBody, ObjectDiagramBody, StateDiagramBody,
                          SequenceDiagramBody, TextBody>;

struct Document {
    std::string id;
    DocKind kind = DocKind::Text;
    Body body;
    std::string source;

    const ClassDiagramBody& as_class_diagram() const;
    const ObjectDiagramBody& as_object_diagram() const;
    const StateDiagramBody& as_state_diagram() const;
    const SequenceDiagramBody& as_sequence_diagram() const;
    const TextBody& as_text() const;
};

/// Structural body equality; spans, ids and source text ignored.
bool body_equal(const Body& a, const Body& b);

}  // namespace sysmodel::dsl
