#include "sysmodel/dsl/printer.hpp"

#include <sstream>

namespace sysmodel::dsl {

namespace {

void print_class_diagram(const ClassDiagramBody& body, std::ostream& out) {
    for (const auto& c : body.classes) {
        out << "class " << c.name;
        if (c.parent) out << " extends " << *c.parent;
        out << " {\n";
        for (const auto& a : c.attrs)
            out << "  attr " << a.name << ": " << type_name(a.type) << '\n';
        for (const auto& m : c.methods) {
            out << "  method " << m.name << '(';
            for (std::size_t i = 0; i < m.params.size(); ++i) {
                if (i) out << ", ";
                out << m.params[i].name << ": " << type_name(m.params[i].type);
            }
            out << "): " << type_name(m.result) << '\n';
        }
        for (const auto& inv : c.invariants)
            out << "  invariant " << print_expr(inv.expr) << '\n';
        out << "}\n";
    }
    for (const auto& a : body.assocs)
        out << "assoc " << a.name << ": " << a.source << " -> " << a.target << '\n';
}

void print_transition(const Transition& tr, std::ostream& out) {
    out << "  trans " << tr.source << " -> " << tr.target << " on " << tr.trigger
        << '(';
    for (std::size_t i = 0; i < tr.formals.size(); ++i) {
        if (i) out << ", ";
        out << tr.formals[i];
    }
    out << ')';
    if (tr.guard) out << " if " << print_expr(tr.guard);
    if (!tr.actions.empty()) {
        out << " / ";
        for (std::size_t i = 0; i < tr.actions.size(); ++i) {
            if (i) out << ", ";
            if (auto* a = std::get_if<Assign>(&tr.actions[i])) {
                out << a->attribute << " = " << print_expr(a->value);
            } else {
                const auto& e = std::get<Emit>(tr.actions[i]);
                out << "emit " << e.selector << '(';
                for (std::size_t j = 0; j < e.args.size(); ++j) {
                    if (j) out << ", ";
                    out << print_expr(e.args[j]);
                }
                out << ") to " << print_expr(e.target);
            }
        }
    }
    out << '\n';
}

void print_state_diagram(const StateDiagramBody& body, std::ostream& out) {
    const Automaton& a = body.automaton;
    out << "statemachine " << a.owner_class << " {\n";
    out << "  states ";
    for (std::size_t i = 0; i < a.control_states.size(); ++i) {
        if (i) out << ", ";
        out << a.control_states[i];
    }
    out << '\n';
    out << "  initial ";
    for (std::size_t i = 0; i < a.initial_controls.size(); ++i) {
        if (i) out << ", ";
        out << a.initial_controls[i];
    }
    out << '\n';
    for (const auto& tr : a.transitions) print_transition(tr, out);
    out << "}\n";
}

void print_sequence_diagram(const SequenceDiagramBody& body, std::ostream& out) {
    out << "sequence " << body.name << " {\n";
    out << "  objects ";
    for (std::size_t i = 0; i < body.lifelines.size(); ++i) {
        if (i) out << ", ";
        out << body.lifelines[i].role << ": " << body.lifelines[i].cls;
    }
    out << '\n';
    for (const auto& step : body.steps) {
        if (auto* e = std::get_if<EventDecl>(&step)) {
            out << "  " << e->from << " -> " << e->to << " : " << e->selector << '(';
            for (std::size_t i = 0; i < e->args.size(); ++i) {
                if (i) out << ", ";
                out << render_value(e->args[i]);
            }
            out << ")\n";
        } else {
            const auto& s = std::get<StateLabelDecl>(step);
            out << "  state " << s.role << ": " << s.label << '\n';
        }
    }
    out << "}\n";
}

void print_object_diagram(const ObjectDiagramBody& body, std::ostream& out) {
    out << "objects {\n";
    for (const auto& o : body.objects) {
        out << "  " << o.name << ": " << o.cls << " {";
        for (std::size_t i = 0; i < o.bindings.size(); ++i) {
            out << (i ? ", " : " ") << o.bindings[i].attribute << " = "
                << render_value(o.bindings[i].value);
        }
        out << (o.bindings.empty() ? "}" : " }") << '\n';
    }
    for (const auto& c : body.creatables)
        out << "  creatable " << c.name << ": " << c.cls << " by " << c.owner << '\n';
    for (const auto& l : body.links)
        out << "  link " << l.assoc << ' ' << l.source << " -> " << l.target << '\n';
    out << "}\n";
}

}  // namespace

std::string serialize_body(DocKind kind, const Body& body) {
    std::ostringstream out;
    switch (kind) {
        case DocKind::ClassDiagram:
            print_class_diagram(std::get<ClassDiagramBody>(body), out);
            break;
        case DocKind::ObjectDiagram:
            print_object_diagram(std::get<ObjectDiagramBody>(body), out);
            break;
        case DocKind::StateDiagram:
            print_state_diagram(std::get<StateDiagramBody>(body), out);
            break;
        case DocKind::SequenceDiagram:
            print_sequence_diagram(std::get<SequenceDiagramBody>(body), out);
            break;
        case DocKind::Text:
            return std::get<TextBody>(body).text;
    }
    return out.str();
}

std::string serialize(const Document& d) { return serialize_body(d.kind, d.body); }

}  // namespace sysmodel::dsl
