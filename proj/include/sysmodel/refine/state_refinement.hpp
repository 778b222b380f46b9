#pragma once

#include <map>
#include <string>

#include "sysmodel/dsl/ast.hpp"
#include "sysmodel/refine/verdict.hpp"

namespace sysmodel::refine {

struct MappingError : Error {
    explicit MappingError(const std::string& what) : Error(what) {}
};

/// Maps each new-diagram state to the old state it refines. States whose
/// names coincide map to themselves implicitly; everything else must be
/// listed. complete() rejects non-total or ill-targeted mappings.
using StateMapping = std::map<std::string, std::string>;

/// State-diagram evolution for one class. Accepted iff
///  (a) every old state has at least one new state mapping to it
///      (R-SD-DROPSTATE),
///  (b) every new transition whose source is reachable projects through
///      the mapping onto an old transition with identical trigger, guard
///      and actions (R-SD-RETARGET when only the target disagrees,
///      R-SD-NEWTRANS otherwise); transitions from unreachable states are
///      free,
///  (c) for every old (state, trigger) pair, each reachable new state
///      mapping onto it retains at least one transition with that trigger,
///      so deletions only prune nondeterminism (R-SD-DROPTRANS),
///  (d) every new initial state maps to an old initial state (R-SD-INIT).
/// Throws MappingError when `mapping` is not total on the new states or
/// targets an unknown old state.
RefinementVerdict refine_state_diagram(const dsl::Document& old_doc,
                                       const dsl::Document& new_doc,
                                       const StateMapping& mapping = {});

}  // namespace sysmodel::refine
