#pragma once

#include <memory>
#include <vector>

#include "sysmodel/core/system_model.hpp"
#include "sysmodel/dsl/ast.hpp"
#include "sysmodel/refine/verdict.hpp"
#include "sysmodel/sim/run.hpp"

namespace sysmodel::refine {

/// Bounded trace-set inclusion: accepted iff every observable trace of
/// `concrete` under the given stimuli and bound is also a trace of
/// `abstract`. A bounded approximation, never a proof; the verdict notes
/// record bound and cap. Rejections carry the lexicographically first
/// counterexample trace as witness. Throws ExplosionLimit when either
/// enumeration hits the cap.
RefinementVerdict trace_refinement_check(std::shared_ptr<const SystemModel> abstract,
                                         std::shared_ptr<const SystemModel> concrete,
                                         const std::vector<sim::Stimulus>& stimuli,
                                         std::size_t rounds, std::size_t cap);

/// Joint satisfiability of several behavioral constraint documents over
/// one base: each state diagram is elaborated against the shared class and
/// object diagrams, and the intersection of the bounded observable trace
/// sets must be nonempty. All state diagrams must constrain the same
/// class. Accepted verdicts carry one common trace as witness.
RefinementVerdict consistency_intersection(const std::vector<dsl::Document>& docs,
                                           const std::vector<sim::Stimulus>& stimuli,
                                           std::size_t rounds, std::size_t cap);

}  // namespace sysmodel::refine
