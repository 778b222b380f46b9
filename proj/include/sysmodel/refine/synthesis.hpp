#pragma once

#include <vector>

#include "sysmodel/core/class_table.hpp"
#include "sysmodel/dsl/ast.hpp"
#include "sysmodel/refine/verdict.hpp"

namespace sysmodel::refine {

struct AmbiguousLifeline : Error {
    explicit AmbiguousLifeline(const std::string& what) : Error(what) {}
};

struct ProjectionEmpty : Error {
    explicit ProjectionEmpty(const std::string& what) : Error(what) {}
};

/// The target lifeline emits before it ever received a message; such a
/// scenario has no reactive realization.
struct ProjectionError : Error {
    explicit ProjectionError(const std::string& what) : Error(what) {}
};

struct LabelConflict : Error {
    explicit LabelConflict(const std::string& what) : Error(what) {}
};

enum class MergeStrategy { TrieByPrefix, ByExplicitStateLabels };

struct SynthesisOptions {
    ClassName target_class;
    MergeStrategy merge = MergeStrategy::TrieByPrefix;
    /// Fold immediately repeated letters of one scenario into self-loops.
    bool loop_folding = false;
};

/// Builds a state diagram for `target_class` whose trigger paths include
/// the projection of every input sequence diagram. TrieByPrefix shares
/// states across common scenario prefixes; ByExplicitStateLabels merges
/// the states annotated with equal `state` labels. The synthesized diagram
/// carries no guards and no assignments, only triggers and emissions.
dsl::Document synthesize_state_diagram(const std::vector<dsl::Document>& seqs,
                                       const SynthesisOptions& opts,
                                       const ClassTable& t);

/// Path membership: accepted iff the projection of the target lifeline
/// (the lifeline whose class is the state diagram's class) labels a path
/// from some initial state. Guards over parameters are evaluated under the
/// literal arguments; guards or output arguments over attributes are
/// assumed satisfiable with a note. Throws AmbiguousLifeline when several
/// lifelines share the class.
RefinementVerdict check_seq_against_state(const dsl::Document& qd,
                                          const dsl::Document& sd,
                                          const ClassTable& t);

}  // namespace sysmodel::refine
