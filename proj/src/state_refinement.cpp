#include "sysmodel/refine/state_refinement.hpp"

#include <algorithm>
#include <stdexcept>

namespace sysmodel::refine {

using dsl::Document;

RefinementVerdict refine_state_diagram(const Document& old_doc, const Document& new_doc,
                                       const StateMapping& mapping) {
    if (old_doc.kind != dsl::DocKind::StateDiagram ||
        new_doc.kind != dsl::DocKind::StateDiagram)
        throw std::invalid_argument("refine_state_diagram needs two state diagrams");

    const Automaton& old_a = old_doc.as_state_diagram().automaton;
    const Automaton& new_a = new_doc.as_state_diagram().automaton;
    if (old_a.owner_class != new_a.owner_class)
        throw std::invalid_argument("state diagrams describe different classes (" +
                                    old_a.owner_class + " vs " + new_a.owner_class + ")");

    // Complete the mapping: identity where names coincide, explicit
    // entries elsewhere. Every new state needs a target among the old
    // states.
    StateMapping map = mapping;
    for (const auto& [from, to] : map) {
        if (!new_a.has_state(from))
            throw MappingError("mapping source '" + from + "' is not a new state");
        if (!old_a.has_state(to))
            throw MappingError("mapping target '" + to + "' is not an old state");
    }
    for (const auto& s : new_a.control_states) {
        if (map.count(s)) continue;
        if (old_a.has_state(s))
            map[s] = s;
        else
            throw MappingError("mapping is not total: new state '" + s +
                               "' has no old counterpart");
    }

    RefinementVerdict verdict;
    verdict.checked_rules = {"R-SD-DROPSTATE", "R-SD-RETARGET", "R-SD-NEWTRANS",
                             "R-SD-DROPTRANS", "R-SD-INIT"};
    const Span new_span = new_doc.as_state_diagram().span;

    // (a) no old state may be dropped.
    for (const auto& os : old_a.control_states) {
        bool covered = false;
        for (const auto& [from, to] : map)
            if (to == os) covered = true;
        if (!covered)
            verdict.reject("R-SD-DROPSTATE", "old state " + os + " has no refinement",
                           new_doc.id, new_span);
    }

    // (b) reachable new transitions must be images of old ones.
    const std::set<std::string> reachable = new_a.reachable_states();
    for (const auto& nt : new_a.transitions) {
        if (!reachable.count(nt.source)) continue;  // dead fragment, free
        const std::string& src = map.at(nt.source);
        const std::string& dst = map.at(nt.target);
        bool image = false;
        bool payload_match_elsewhere = false;
        for (const auto& ot : old_a.transitions) {
            if (ot.source != src) continue;
            if (!transition_payload_equal(ot, nt)) continue;
            if (ot.target == dst) {
                image = true;
                break;
            }
            payload_match_elsewhere = true;
        }
        if (image) continue;
        if (payload_match_elsewhere)
            verdict.reject("R-SD-RETARGET",
                           "transition " + nt.source + " -> " + nt.target + " on " +
                               nt.trigger + " retargets an old transition",
                           new_doc.id, nt.span.valid() ? nt.span : new_span);
        else
            verdict.reject("R-SD-NEWTRANS",
                           "transition " + nt.source + " -> " + nt.target + " on " +
                               nt.trigger + " is not the image of an old transition",
                           new_doc.id, nt.span.valid() ? nt.span : new_span);
    }

    // (c) deletions may only prune nondeterminism: every reachable
    // refinement of an old state keeps each trigger the old state handled.
    for (const auto& ot : old_a.transitions) {
        for (const auto& ns : new_a.control_states) {
            if (map.at(ns) != ot.source || !reachable.count(ns)) continue;
            bool retained = false;
            for (const auto& nt : new_a.transitions)
                if (nt.source == ns && nt.trigger == ot.trigger) retained = true;
            if (!retained)
                verdict.reject("R-SD-DROPTRANS",
                               "state " + ns + " drops trigger " + ot.trigger +
                                   " handled by old state " + ot.source,
                               new_doc.id, new_span);
        }
    }

    // (d) initial states refine initial states.
    for (const auto& ni : new_a.initial_controls) {
        const std::string& target = map.at(ni);
        if (std::find(old_a.initial_controls.begin(), old_a.initial_controls.end(),
                      target) == old_a.initial_controls.end())
            verdict.reject("R-SD-INIT",
                           "initial state " + ni + " maps to non-initial state " +
                               target,
                           new_doc.id, new_span);
    }

    // De-duplicate repeated (c) findings.
    std::sort(verdict.violations.begin(), verdict.violations.end());
    verdict.violations.erase(
        std::unique(verdict.violations.begin(), verdict.violations.end()),
        verdict.violations.end());
    return verdict;
}

}  // namespace sysmodel::refine
