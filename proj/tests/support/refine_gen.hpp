#pragma once

// Generators for (old, new, mapping) state-diagram pairs. Accepted pairs
// apply only behavior-preserving edits (unreachable additions, pruning of
// duplicate-trigger nondeterminism, state splits and renames); rejected
// pairs apply one deliberately unsound edit. The pair corpus stays
// guard-free so syntactic acceptance implies bounded trace inclusion.

#include <optional>

#include "generators.hpp"
#include "sysmodel/dsl/parser.hpp"
#include "sysmodel/dsl/printer.hpp"
#include "sysmodel/refine/state_refinement.hpp"

namespace testgen {

using namespace sysmodel;

inline dsl::Document automaton_doc(const Automaton& a, const std::string& id) {
    dsl::StateDiagramBody body;
    body.automaton = a;
    std::string text = dsl::serialize_body(dsl::DocKind::StateDiagram, dsl::Body{body});
    return dsl::parse(dsl::DocKind::StateDiagram, text, id);
}

/// Guard-free base automaton with duplicated (source, trigger) groups so
/// deletions have something to prune. Every transition emits something to
/// env so edits stay observable.
inline Automaton refinement_base(Rng& rng, int triggers = 3) {
    Automaton a;
    a.owner_class = "Node";
    const int states = rng.range(2, 4);
    for (int i = 0; i < states; ++i) a.control_states.push_back("S" + std::to_string(i));
    a.initial_controls = {"S0"};
    const int transitions = rng.range(2, 5);
    for (int i = 0; i < transitions; ++i) {
        Transition tr;
        // The first transition always leaves the initial state on t1, so
        // every base automaton reacts to the very first stimulus.
        tr.source = i == 0 ? "S0" : a.control_states[rng.below(a.control_states.size())];
        tr.target = a.control_states[rng.below(a.control_states.size())];
        tr.trigger = i == 0 ? "t1" : "t" + std::to_string(rng.range(1, triggers));
        tr.formals = {"v"};
        Emit e;
        e.selector = "n1";
        e.args = {make_literal(Value{std::int64_t{rng.range(0, 3)}})};
        e.target = make_literal(Value{RefValue{"env"}});
        tr.actions.emplace_back(std::move(e));
        a.transitions.push_back(std::move(tr));
    }
    // Force at least one duplicated (source, trigger) group.
    Transition dup = a.transitions[rng.below(a.transitions.size())];
    dup.target = a.control_states[rng.below(a.control_states.size())];
    dup.actions.clear();
    Emit alt;
    alt.selector = "n2";
    alt.target = make_literal(Value{RefValue{"env"}});
    dup.actions.emplace_back(std::move(alt));
    a.transitions.push_back(std::move(dup));
    return a;
}

struct SdPair {
    Automaton old_automaton;
    Automaton new_automaton;
    refine::StateMapping mapping;
    std::string expected_rule;  // empty: expected accepted
    std::string edit;           // what the generator did, for diagnostics
};

inline SdPair accepted_sd_pair(Rng& rng) {
    SdPair pair;
    pair.old_automaton = refinement_base(rng);
    Automaton next = pair.old_automaton;
    refine::StateMapping mapping;

    switch (rng.range(0, 3)) {
        case 0: {
            pair.edit = "unreachable-state";
            std::string fresh = "U";
            next.control_states.push_back(fresh);
            mapping[fresh] = next.control_states[rng.below(next.control_states.size() - 1)];
            if (rng.chance(50)) {
                // Transitions out of dead states are unrestricted.
                Transition tr;
                tr.source = fresh;
                tr.target = next.control_states[rng.below(next.control_states.size())];
                tr.trigger = "t9";
                tr.formals = {"v"};
                next.transitions.push_back(std::move(tr));
            }
            break;
        }
        case 1: {
            pair.edit = "prune-nondeterminism";
            // Delete one member of a duplicated (source, trigger) group.
            std::optional<std::size_t> victim;
            for (std::size_t i = 0; i < next.transitions.size() && !victim; ++i)
                for (std::size_t j = 0; j < next.transitions.size(); ++j)
                    if (i != j &&
                        next.transitions[i].source == next.transitions[j].source &&
                        next.transitions[i].trigger == next.transitions[j].trigger)
                        victim = i;
            if (victim) next.transitions.erase(next.transitions.begin() + *victim);
            break;
        }
        case 2: {
            pair.edit = "split-state";
            const std::string s =
                next.control_states[rng.below(next.control_states.size())];
            std::string twin = s + "b";
            next.control_states.push_back(twin);
            mapping[twin] = s;
            // The twin copies every outgoing transition of s.
            std::vector<Transition> copies;
            for (const auto& tr : next.transitions)
                if (tr.source == s) {
                    Transition c = tr;
                    c.source = twin;
                    copies.push_back(std::move(c));
                }
            // Redirect one incoming transition onto the twin.
            for (auto& tr : next.transitions)
                if (tr.target == s && rng.chance(60)) {
                    tr.target = twin;
                    break;
                }
            next.transitions.insert(next.transitions.end(), copies.begin(),
                                    copies.end());
            break;
        }
        default: {
            pair.edit = "rename-state";
            const std::string s =
                next.control_states[rng.below(next.control_states.size())];
            std::string renamed = s + "r";
            for (auto& state : next.control_states)
                if (state == s) state = renamed;
            for (auto& init : next.initial_controls)
                if (init == s) init = renamed;
            for (auto& tr : next.transitions) {
                if (tr.source == s) tr.source = renamed;
                if (tr.target == s) tr.target = renamed;
            }
            mapping[renamed] = s;
            break;
        }
    }
    pair.new_automaton = std::move(next);
    pair.mapping = std::move(mapping);
    return pair;
}

inline SdPair rejected_sd_pair(Rng& rng) {
    SdPair pair;
    pair.old_automaton = refinement_base(rng);
    Automaton next = pair.old_automaton;

    const std::set<std::string> reachable = next.reachable_states();

    // Prefer a retarget edit; fall back to a fresh reachable transition
    // when no safe retarget exists.
    if (rng.chance(50)) {
        for (std::size_t i = 0; i < next.transitions.size(); ++i) {
            Transition& tr = next.transitions[i];
            if (!reachable.count(tr.source)) continue;
            for (const auto& candidate : next.control_states) {
                if (candidate == tr.target) continue;
                // The retargeted transition must not coincide with another
                // old transition, or it would be an image again.
                bool collides = false;
                for (const auto& ot : pair.old_automaton.transitions)
                    if (ot.source == tr.source && ot.target == candidate &&
                        transition_payload_equal(ot, tr))
                        collides = true;
                if (collides) continue;
                std::string original = tr.target;
                tr.target = candidate;
                // The source must stay reachable or the rule set frees it.
                if (!next.reachable_states().count(tr.source)) {
                    tr.target = original;
                    continue;
                }
                pair.edit = "retarget";
                pair.expected_rule = "R-SD-RETARGET";
                pair.new_automaton = std::move(next);
                return pair;
            }
        }
    }

    pair.edit = "new-reachable-transition";
    pair.expected_rule = "R-SD-NEWTRANS";
    Transition tr;
    std::vector<std::string> pool(reachable.begin(), reachable.end());
    tr.source = pool[rng.below(pool.size())];
    tr.target = next.control_states[rng.below(next.control_states.size())];
    tr.trigger = "t" + std::to_string(rng.range(1, 3));
    tr.formals = {"v"};
    Emit e;
    e.selector = "n3";  // an output no old transition produces
    e.target = make_literal(Value{RefValue{"env"}});
    tr.actions.emplace_back(std::move(e));
    next.transitions.push_back(std::move(tr));
    pair.new_automaton = std::move(next);
    return pair;
}

}  // namespace testgen
