#pragma once

// Random document bodies of every kind, used by the round-trip property
// in the unit tests and by the acceptance suite.

#include "generators.hpp"
#include "sysmodel/dsl/ast.hpp"

namespace testgen {

inline sysmodel::dsl::Document random_document(Rng& rng) {
    using namespace sysmodel;
    using namespace sysmodel::dsl;
    switch (rng.range(0, 3)) {
        case 0: {
            ClassDiagramBody body;
            const int classes = rng.range(1, 4);
            for (int i = 0; i < classes; ++i) {
                ClassDecl c;
                c.name = "C" + std::to_string(i);
                if (i > 0 && rng.chance(50)) c.parent = "C" + std::to_string(rng.below(i));
                const int attrs = rng.range(0, 3);
                for (int a = 0; a < attrs; ++a)
                    c.attrs.push_back(
                        {"a" + std::to_string(a), random_scalar_type(rng), {}});
                const int methods = rng.range(0, 2);
                for (int m = 0; m < methods; ++m) {
                    MethodDecl method;
                    method.name = "m" + std::to_string(m);
                    for (int p = 0, n = rng.range(0, 2); p < n; ++p)
                        method.params.push_back(
                            {"p" + std::to_string(p), random_scalar_type(rng)});
                    method.result = random_scalar_type(rng);
                    c.methods.push_back(std::move(method));
                }
                if (!c.attrs.empty() && c.attrs[0].type == ValueType::Int &&
                    rng.chance(50))
                    c.invariants.push_back(
                        {make_binary(BinaryOp::Ge, make_var(c.attrs[0].name),
                                     make_literal(Value{std::int64_t{rng.range(-5, 0)}})),
                         {}});
                body.classes.push_back(std::move(c));
            }
            if (rng.chance(40) && body.classes.size() >= 2)
                body.assocs.push_back(
                    {"owns", body.classes[0].name, body.classes[1].name, {}});
            return {"gen.cd", DocKind::ClassDiagram, body, ""};
        }
        case 1: {
            StateDiagramBody body;
            body.automaton = random_automaton(rng, "Node");
            return {"gen.sd", DocKind::StateDiagram, body, ""};
        }
        case 2: {
            SequenceDiagramBody body;
            body.name = "Gen";
            body.lifelines.push_back({"a", "Node", {}});
            body.lifelines.push_back({"b", "Node", {}});
            const int steps = rng.range(1, 6);
            for (int i = 0; i < steps; ++i) {
                if (rng.chance(20)) {
                    body.steps.emplace_back(
                        StateLabelDecl{rng.chance(50) ? "a" : "b",
                                       "L" + std::to_string(rng.range(0, 3)),
                                       {}});
                } else {
                    EventDecl e;
                    e.from = rng.chance(30) ? "env" : (rng.chance(50) ? "a" : "b");
                    e.to = rng.chance(50) ? "a" : "b";
                    e.selector = "t" + std::to_string(rng.range(1, 3));
                    for (int v = 0, n = rng.range(0, 2); v < n; ++v)
                        e.args.push_back(
                            random_value(rng, random_scalar_type(rng)));
                    body.steps.emplace_back(std::move(e));
                }
            }
            return {"gen.qd", DocKind::SequenceDiagram, body, ""};
        }
        default: {
            ObjectDiagramBody body;
            const int objects = rng.range(1, 4);
            for (int i = 0; i < objects; ++i) {
                ObjectDecl o;
                o.name = "o" + std::to_string(i);
                o.cls = "Node";
                for (int b = 0, n = rng.range(0, 2); b < n; ++b) {
                    ValueType t = random_scalar_type(rng);
                    o.bindings.push_back(
                        {"a" + std::to_string(b), random_value(rng, t), {}});
                }
                body.objects.push_back(std::move(o));
            }
            if (rng.chance(40)) body.creatables.push_back({"cx", "Node", "env", {}});
            if (body.objects.size() >= 2 && rng.chance(40))
                body.links.push_back(
                    {"owns", body.objects[0].name, body.objects[1].name, {}});
            return {"gen.od", DocKind::ObjectDiagram, body, ""};
        }
    }
}

}  // namespace testgen
