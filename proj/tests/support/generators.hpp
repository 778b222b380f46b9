#pragma once

// Seeded random model/document generators shared by the property tests
// and the acceptance suite. Everything is deterministic in the seed.

#include <random>
#include <string>
#include <vector>

#include "sysmodel/core/class_table.hpp"
#include "sysmodel/core/system_model.hpp"
#include "sysmodel/dsl/ast.hpp"
#include "sysmodel/sim/run.hpp"

namespace testgen {

using namespace sysmodel;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return n == 0 ? 0 : engine_() % n; }
    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(int percent) { return range(1, 100) <= percent; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline ValueType random_scalar_type(Rng& rng) {
    switch (rng.range(0, 3)) {
        case 0: return ValueType::Int;
        case 1: return ValueType::Bool;
        case 2: return ValueType::String;
        default: return ValueType::ObjectRef;
    }
}

inline Value random_value(Rng& rng, ValueType t) {
    switch (t) {
        case ValueType::Int: return Value{std::int64_t{rng.range(-9, 9)}};
        case ValueType::Bool: return Value{rng.chance(50)};
        case ValueType::String:
            return Value{std::string(1, static_cast<char>('a' + rng.range(0, 5)))};
        case ValueType::ObjectRef:
            return rng.chance(30) ? Value{RefValue{}}
                                  : Value{RefValue{"o" + std::to_string(rng.range(1, 3))}};
    }
    return Value{std::int64_t{0}};
}

struct ClassTableOptions {
    int max_classes = 10;
    bool allow_cycles = false;          // inject parent cycles
    bool allow_unknown_parent = false;  // dangling extends
    bool allow_conflicts = false;       // conflicting member redeclarations
    bool with_invariants = false;       // occasional (sometimes ill-typed) invariants
};

/// Random class table. With all fault switches off the table satisfies
/// every invariant by construction.
inline ClassTable random_class_table(Rng& rng, const ClassTableOptions& opts = {}) {
    ClassTable t;
    const int n = rng.range(1, opts.max_classes);
    std::vector<ClassName> names;
    for (int i = 0; i < n; ++i) names.push_back("C" + std::to_string(i));

    for (int i = 0; i < n; ++i) {
        ClassInfo info;
        // Parents point backwards, so the base table is a forest.
        if (i > 0 && rng.chance(60)) info.parent = names[rng.below(i)];
        const int attrs = rng.range(0, 3);
        for (int a = 0; a < attrs; ++a)
            info.sig.attributes.push_back(
                {"a" + std::to_string(i) + std::to_string(a), random_scalar_type(rng)});
        const int methods = rng.range(0, 3);
        for (int m = 0; m < methods; ++m) {
            Method method;
            method.name = "m" + std::to_string(i) + std::to_string(m);
            const int params = rng.range(0, 2);
            for (int p = 0; p < params; ++p)
                method.params.push_back(
                    {"p" + std::to_string(p), random_scalar_type(rng)});
            method.result = random_scalar_type(rng);
            info.sig.methods.push_back(std::move(method));
        }
        if (opts.with_invariants && rng.chance(30)) {
            // Sometimes well-typed over a declared attribute, sometimes
            // referencing a missing one or not Bool at all.
            std::string var = !info.sig.attributes.empty() && rng.chance(70)
                                  ? info.sig.attributes.front().name
                                  : "phantom";
            ExprPtr ref = make_var(var);
            ExprPtr zero = make_literal(Value{std::int64_t{0}});
            info.invariants.push_back(rng.chance(70)
                                          ? make_binary(BinaryOp::Ge, ref, zero)
                                          : make_binary(BinaryOp::Add, ref, zero));
        }
        t.classes[names[i]] = std::move(info);
    }

    if (opts.allow_conflicts && n > 1 && rng.chance(50)) {
        // Redeclare an ancestor member with a different type somewhere.
        for (auto& [name, info] : t.classes) {
            if (!info.parent) continue;
            const ClassInfo& parent = t.classes[*info.parent];
            if (!parent.sig.attributes.empty()) {
                Attribute copy = parent.sig.attributes.front();
                copy.type = copy.type == ValueType::Int ? ValueType::Bool : ValueType::Int;
                info.sig.attributes.push_back(copy);
                break;
            }
        }
    }
    if (opts.allow_unknown_parent && rng.chance(40))
        t.classes[names[rng.below(n)]].parent = "Ghost";
    if (opts.allow_cycles && n >= 2 && rng.chance(40)) {
        // Close a cycle: make an ancestor extend a descendant.
        t.classes[names[0]].parent = names[n - 1];
        t.classes[names[n - 1]].parent = names[0];
    }
    return t;
}

struct AutomatonOptions {
    int max_states = 5;
    int max_transitions = 8;
    int triggers = 3;          // selectors t1..tk, one Int parameter each
    bool with_guards = true;
    bool with_actions = true;
    int max_outputs = 2;
};

/// Signature with Int-typed attribute `x` and methods t1..tk(v: Int): Bool.
inline Signature trigger_signature(int triggers) {
    Signature sig;
    sig.attributes.push_back({"x", ValueType::Int});
    for (int i = 1; i <= triggers; ++i)
        sig.methods.push_back(
            {"t" + std::to_string(i), {{"v", ValueType::Int}}, ValueType::Bool});
    return sig;
}

inline Automaton random_automaton(Rng& rng, const ClassName& cls,
                                  const AutomatonOptions& opts = {}) {
    Automaton a;
    a.owner_class = cls;
    const int states = rng.range(1, opts.max_states);
    for (int i = 0; i < states; ++i) a.control_states.push_back("S" + std::to_string(i));
    a.initial_controls.push_back("S0");
    if (states > 1 && rng.chance(25)) a.initial_controls.push_back("S1");

    const int transitions = rng.range(1, opts.max_transitions);
    for (int i = 0; i < transitions; ++i) {
        Transition tr;
        tr.source = a.control_states[rng.below(a.control_states.size())];
        tr.target = a.control_states[rng.below(a.control_states.size())];
        tr.trigger = "t" + std::to_string(rng.range(1, opts.triggers));
        tr.formals = {"v"};
        if (opts.with_guards && rng.chance(40)) {
            // v <op> c or x <op> c
            ExprPtr lhs = make_var(rng.chance(50) ? "v" : "x");
            ExprPtr rhs = make_literal(Value{std::int64_t{rng.range(-3, 3)}});
            BinaryOp op = rng.chance(50) ? BinaryOp::Gt : BinaryOp::Le;
            tr.guard = make_binary(op, lhs, rhs);
        }
        if (opts.with_actions && rng.chance(50)) {
            Assign as;
            as.attribute = "x";
            as.value = rng.chance(50)
                           ? make_binary(BinaryOp::Add, make_var("x"), make_var("v"))
                           : make_literal(Value{std::int64_t{rng.range(-2, 4)}});
            tr.actions.emplace_back(std::move(as));
        }
        const int outputs = rng.range(0, opts.max_outputs);
        for (int o = 0; o < outputs; ++o) {
            Emit e;
            e.selector = "n" + std::to_string(rng.range(1, 2));
            if (rng.chance(60))
                e.args.push_back(rng.chance(50)
                                     ? make_var("v")
                                     : make_literal(Value{std::int64_t{rng.range(0, 5)}}));
            e.target = make_literal(Value{RefValue{"env"}});
            tr.actions.emplace_back(std::move(e));
        }
        a.transitions.push_back(std::move(tr));
    }
    return a;
}

inline ObjectState default_state(const Automaton& a) {
    return ObjectState{a.initial_controls.front(), {{"x", std::int64_t{0}}}};
}

/// Single-class model around one automaton: object `o1`, signature
/// t1..tk, no creatables. The workhorse of the refinement corpora.
inline std::shared_ptr<const SystemModel> single_object_model(const Automaton& a,
                                                              int triggers) {
    SystemModel m;
    ClassInfo info;
    info.sig = trigger_signature(triggers);
    m.class_table.classes[a.owner_class] = info;
    m.automata[a.owner_class] = a;
    ObjectId id{"o1", a.owner_class};
    m.initial_objects.emplace_back(id, default_state(a));
    return make_model(std::move(m));
}

/// One stimulus per trigger, one per round, addressed to `o1`.
inline std::vector<sim::Stimulus> stimulus_per_trigger(int triggers, int value = 1) {
    std::vector<sim::Stimulus> out;
    for (int i = 1; i <= triggers; ++i)
        out.push_back({i - 1, "o1", "t" + std::to_string(i),
                       {Value{std::int64_t{value}}}});
    return out;
}

/// Multi-object model for the medium-law runs: 2–4 objects that bounce
/// messages at each other plus creatable ids owned by objects and env.
struct RandomModelResult {
    std::shared_ptr<const SystemModel> model;
    std::vector<sim::Stimulus> stimuli;
};

inline RandomModelResult random_system(Rng& rng, int max_objects = 4) {
    SystemModel m;
    ClassInfo info;
    info.sig.attributes.push_back({"x", ValueType::Int});
    info.sig.methods.push_back({"ping", {{"v", ValueType::Int}}, ValueType::Bool});
    info.sig.methods.push_back({"pong", {{"v", ValueType::Int}}, ValueType::Bool});
    m.class_table.classes["Node"] = info;

    const int objects = rng.range(1, max_objects);
    std::vector<std::string> names;
    for (int i = 1; i <= objects; ++i) names.push_back("o" + std::to_string(i));
    std::vector<std::string> all_targets = names;
    all_targets.push_back("env");

    Automaton a;
    a.owner_class = "Node";
    const int states = rng.range(1, 3);
    for (int i = 0; i < states; ++i) a.control_states.push_back("S" + std::to_string(i));
    a.initial_controls.push_back("S0");
    const int transitions = rng.range(2, 6);
    std::vector<std::string> creatable_names;
    const int creatables = rng.range(0, 2);
    for (int i = 1; i <= creatables; ++i) creatable_names.push_back("c" + std::to_string(i));
    // Objects emit to initial objects and env only; the creatable pool
    // belongs to env and is exercised through stimuli.
    std::vector<std::string> emit_targets = all_targets;
    for (int i = 0; i < transitions; ++i) {
        Transition tr;
        tr.source = a.control_states[rng.below(a.control_states.size())];
        tr.target = a.control_states[rng.below(a.control_states.size())];
        tr.trigger = rng.chance(50) ? "ping" : "pong";
        tr.formals = {"v"};
        if (rng.chance(30))
            tr.guard = make_binary(BinaryOp::Ge, make_var("v"),
                                   make_literal(Value{std::int64_t{rng.range(-2, 2)}}));
        if (rng.chance(40)) {
            Assign as;
            as.attribute = "x";
            as.value = make_binary(BinaryOp::Add, make_var("x"),
                                   make_literal(Value{std::int64_t{1}}));
            tr.actions.emplace_back(std::move(as));
        }
        const int outs = rng.range(0, 2);
        for (int o = 0; o < outs; ++o) {
            Emit e;
            e.selector = rng.chance(50) ? "ping" : "pong";
            e.args.push_back(make_binary(BinaryOp::Add, make_var("v"),
                                         make_literal(Value{std::int64_t{1}})));
            e.target = make_literal(Value{RefValue{rng.pick(emit_targets)}});
            tr.actions.emplace_back(std::move(e));
        }
        a.transitions.push_back(std::move(tr));
    }
    m.automata["Node"] = a;

    for (const auto& name : names)
        m.initial_objects.emplace_back(ObjectId{name, "Node"},
                                       ObjectState{"S0", {{"x", std::int64_t{0}}}});
    for (const auto& c : creatable_names)
        m.creatables[ObjectId::env()].insert(ObjectId{c, "Node"});

    RandomModelResult result;
    result.model = make_model(std::move(m));
    const int stimuli = rng.range(1, 3);
    for (int i = 0; i < stimuli; ++i) {
        std::string receiver = rng.pick(names);
        if (!creatable_names.empty() && rng.chance(25))
            receiver = rng.pick(creatable_names);  // exercises creation
        result.stimuli.push_back({rng.range(0, 3), receiver,
                                  rng.chance(50) ? "ping" : "pong",
                                  {Value{std::int64_t{rng.range(-2, 4)}}}});
    }
    return result;
}

}  // namespace testgen
