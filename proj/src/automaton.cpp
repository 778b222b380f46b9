#include "sysmodel/core/automaton.hpp"

#include <algorithm>
#include <sstream>

#include "sysmodel/core/errors.hpp"

namespace sysmodel {

std::string render_object_state(const ObjectState& s) {
    std::ostringstream out;
    out << s.control << ",{";
    bool first = true;
    for (const auto& [name, value] : s.valuation) {
        if (!first) out << ',';
        first = false;
        out << name << '=' << render_value(value);
    }
    out << '}';
    return out.str();
}

std::vector<const Assign*> Transition::assignments() const {
    std::vector<const Assign*> out;
    for (const auto& item : actions)
        if (auto* a = std::get_if<Assign>(&item)) out.push_back(a);
    return out;
}

std::vector<const Emit*> Transition::emits() const {
    std::vector<const Emit*> out;
    for (const auto& item : actions)
        if (auto* e = std::get_if<Emit>(&item)) out.push_back(e);
    return out;
}

bool action_item_equal(const ActionItem& a, const ActionItem& b) {
    if (a.index() != b.index()) return false;
    if (auto* aa = std::get_if<Assign>(&a)) {
        const auto& ab = std::get<Assign>(b);
        return aa->attribute == ab.attribute && expr_equal(aa->value, ab.value);
    }
    const auto& ea = std::get<Emit>(a);
    const auto& eb = std::get<Emit>(b);
    if (ea.selector != eb.selector || ea.args.size() != eb.args.size()) return false;
    if (!expr_equal(ea.target, eb.target)) return false;
    for (std::size_t i = 0; i < ea.args.size(); ++i)
        if (!expr_equal(ea.args[i], eb.args[i])) return false;
    return true;
}

bool transition_payload_equal(const Transition& a, const Transition& b) {
    if (a.trigger != b.trigger || a.formals != b.formals) return false;
    if (!expr_equal(a.guard, b.guard)) return false;
    if (a.actions.size() != b.actions.size()) return false;
    for (std::size_t i = 0; i < a.actions.size(); ++i)
        if (!action_item_equal(a.actions[i], b.actions[i])) return false;
    return true;
}

bool transition_equal(const Transition& a, const Transition& b) {
    return a.source == b.source && a.target == b.target &&
           transition_payload_equal(a, b);
}

bool Automaton::has_state(const std::string& name) const {
    return std::find(control_states.begin(), control_states.end(), name) !=
           control_states.end();
}

std::set<std::string> Automaton::reachable_states() const {
    std::set<std::string> seen(initial_controls.begin(), initial_controls.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& tr : transitions) {
            if (seen.count(tr.source) && !seen.count(tr.target)) {
                seen.insert(tr.target);
                changed = true;
            }
        }
    }
    return seen;
}

bool automaton_equal(const Automaton& a, const Automaton& b) {
    if (a.owner_class != b.owner_class || a.control_states != b.control_states ||
        a.initial_controls != b.initial_controls ||
        a.transitions.size() != b.transitions.size())
        return false;
    for (std::size_t i = 0; i < a.transitions.size(); ++i)
        if (!transition_equal(a.transitions[i], b.transitions[i])) return false;
    return true;
}

std::vector<Step> enabled_steps(const Automaton& a, const ObjectState& s,
                                const Message& m) {
    std::vector<Step> steps;
    for (const auto& tr : a.transitions) {
        if (tr.source != s.control || tr.trigger != m.selector) continue;
        if (tr.formals.size() != m.args.size()) continue;

        // Scope: attributes overlaid with the bound parameters.
        Valuation vars = s.valuation;
        for (std::size_t i = 0; i < tr.formals.size(); ++i)
            vars[tr.formals[i]] = m.args[i];

        if (tr.guard) {
            Value g = eval(tr.guard, vars);
            if (auto* b = std::get_if<bool>(&g)) {
                if (!*b) continue;
            } else {
                throw EvaluationError("guard evaluated to a non-Bool value");
            }
        }

        Step step;
        step.state.control = tr.target;
        step.state.valuation = s.valuation;
        for (const auto& item : tr.actions) {
            if (auto* assign = std::get_if<Assign>(&item)) {
                Value v = eval(assign->value, vars);
                step.state.valuation[assign->attribute] = v;
                vars[assign->attribute] = v;
            } else {
                const auto& emit = std::get<Emit>(item);
                Value target = eval(emit.target, vars);
                auto* ref = std::get_if<RefValue>(&target);
                if (!ref)
                    throw EvaluationError("emit target is not an object reference");
                if (ref->is_null())
                    throw EvaluationError("emit target is the null reference");
                Message out;
                out.sender = m.receiver;
                out.receiver = ObjectId{ref->name, ""};  // class resolved on enqueue
                out.selector = emit.selector;
                out.tag = MsgTag::Call;
                for (const auto& arg : emit.args) out.args.push_back(eval(arg, vars));
                step.outputs.push_back(std::move(out));
            }
        }
        if (std::find(steps.begin(), steps.end(), step) == steps.end())
            steps.push_back(std::move(step));
    }
    return steps;
}

std::set<std::vector<Message>> black_box(const Automaton& a, const ObjectState& init,
                                         const std::vector<Message>& inputs,
                                         std::size_t bound, std::size_t cap) {
    if (bound < inputs.size())
        throw std::invalid_argument("black_box: bound smaller than the input prefix");

    std::set<std::vector<Message>> results;
    std::size_t nodes = 0;

    // Depth-first over rounds; each round delivers at most one input and
    // branches over the enabled reactions.
    struct Frame {
        ObjectState state;
        std::vector<Message> emitted;
        std::size_t round;
    };
    std::vector<Frame> stack{{init, {}, 0}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.round >= inputs.size()) {
            // Remaining rounds are quiescent; no further outputs appear.
            results.insert(std::move(f.emitted));
            continue;
        }
        if (++nodes > cap) throw ExplosionLimit(cap);
        auto steps = enabled_steps(a, f.state, inputs[f.round]);
        if (steps.empty()) {
            // Message consumed without effect.
            stack.push_back({f.state, f.emitted, f.round + 1});
            continue;
        }
        for (const auto& step : steps) {
            Frame next{step.state, f.emitted, f.round + 1};
            next.emitted.insert(next.emitted.end(), step.outputs.begin(),
                                step.outputs.end());
            stack.push_back(std::move(next));
        }
    }
    return results;
}

}  // namespace sysmodel
