#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sysmodel/core/expr.hpp"
#include "sysmodel/core/message.hpp"

namespace sysmodel {

/// Control state plus attribute valuation of one object.
struct ObjectState {
    std::string control;
    Valuation valuation;

    auto operator<=>(const ObjectState&) const = default;
};

/// Canonical rendering: `Idle,{balance=5,open=true}` with bindings sorted
/// by attribute name.
std::string render_object_state(const ObjectState& s);

struct Assign {
    std::string attribute;
    ExprPtr value;
    Span span;
};

/// Output template: on firing, `emit selector(args) to target` is
/// instantiated under the current valuation and enqueued.
struct Emit {
    std::string selector;
    std::vector<ExprPtr> args;
    ExprPtr target;
    Span span;
};

/// Assignments and emissions evaluate in declaration order; later items
/// see the updates of earlier assignments.
using ActionItem = std::variant<Assign, Emit>;

bool action_item_equal(const ActionItem& a, const ActionItem& b);

struct Transition {
    std::string source;
    std::string target;
    std::string trigger;             // method selector
    std::vector<std::string> formals;  // parameter names bound from message args
    ExprPtr guard;                   // null means always enabled
    std::vector<ActionItem> actions;
    Span span;

    std::vector<const Assign*> assignments() const;
    std::vector<const Emit*> emits() const;
};

/// Equality on everything but spans; used by refinement rules.
bool transition_equal(const Transition& a, const Transition& b);
/// Equality of trigger, guard and actions only (endpoints ignored).
bool transition_payload_equal(const Transition& a, const Transition& b);

struct Automaton {
    ClassName owner_class;
    std::vector<std::string> control_states;
    std::vector<std::string> initial_controls;
    std::vector<Transition> transitions;

    bool has_state(const std::string& name) const;
    /// States reachable from the initial controls, guards ignored.
    std::set<std::string> reachable_states() const;
};

bool automaton_equal(const Automaton& a, const Automaton& b);

struct Step {
    ObjectState state;
    std::vector<Message> outputs;

    auto operator<=>(const Step&) const = default;
};

constexpr std::size_t kDefaultBranchCap = 10000;

/// All distinct reactions of automaton `a` in state `s` to message `m`:
/// one Step per transition whose source is s.control, whose trigger and
/// arity match m, and whose guard holds. The emitted messages carry
/// m.receiver as sender. An empty result means the message is consumed
/// without effect; this never throws for unmatched selectors.
std::vector<Step> enabled_steps(const Automaton& a, const ObjectState& s,
                                const Message& m);

/// All output sequences reachable by delivering `inputs` one message per
/// round, branching over enabled_steps; a finite approximation of the
/// automaton's black-box behavior. Throws ExplosionLimit past `cap`
/// explored nodes and std::invalid_argument when bound < inputs.size().
std::set<std::vector<Message>> black_box(const Automaton& a, const ObjectState& init,
                                         const std::vector<Message>& inputs,
                                         std::size_t bound,
                                         std::size_t cap = kDefaultBranchCap);

}  // namespace sysmodel
