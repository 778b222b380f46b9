#include "sysmodel/refine/trace_refinement.hpp"

#include <algorithm>
#include <stdexcept>

#include "sysmodel/core/errors.hpp"
#include "sysmodel/sem/elaborate.hpp"

namespace sysmodel::refine {

RefinementVerdict trace_refinement_check(std::shared_ptr<const SystemModel> abstract,
                                         std::shared_ptr<const SystemModel> concrete,
                                         const std::vector<sim::Stimulus>& stimuli,
                                         std::size_t rounds, std::size_t cap) {
    sim::RunSet abstract_runs = sim::enumerate_runs(abstract, stimuli, rounds, cap);
    sim::RunSet concrete_runs = sim::enumerate_runs(concrete, stimuli, rounds, cap);
    if (abstract_runs.truncated || concrete_runs.truncated) throw ExplosionLimit(cap);

    RefinementVerdict verdict;
    verdict.checked_rules = {"R-TRACE-INCLUSION"};
    verdict.notes.push_back("bound=" + std::to_string(rounds) +
                            " cap=" + std::to_string(cap));

    const std::set<std::string> abstract_set = abstract_runs.observable();
    for (const std::string& trace : concrete_runs.observable()) {
        if (abstract_set.count(trace)) continue;
        verdict.reject("R-TRACE-INCLUSION",
                       "concrete trace not included at bound " + std::to_string(rounds));
        verdict.witness = trace;
        break;  // the first (lexicographically smallest) counterexample
    }
    return verdict;
}

RefinementVerdict consistency_intersection(const std::vector<dsl::Document>& docs,
                                           const std::vector<sim::Stimulus>& stimuli,
                                           std::size_t rounds, std::size_t cap) {
    std::vector<dsl::Document> base;
    std::vector<dsl::Document> constraints;
    for (const auto& d : docs) {
        if (d.kind == dsl::DocKind::StateDiagram)
            constraints.push_back(d);
        else
            base.push_back(d);
    }
    if (constraints.size() < 2)
        throw std::invalid_argument(
            "consistency needs at least two state diagrams over a shared base");
    const ClassName cls = constraints.front().as_state_diagram().automaton.owner_class;
    for (const auto& c : constraints)
        if (c.as_state_diagram().automaton.owner_class != cls)
            throw std::invalid_argument(
                "consistency constraints must describe one class");

    RefinementVerdict verdict;
    verdict.checked_rules = {"R-CONS-EMPTY"};
    verdict.notes.push_back("bound=" + std::to_string(rounds) +
                            " cap=" + std::to_string(cap));

    std::set<std::string> common;
    bool first = true;
    for (const auto& constraint : constraints) {
        std::vector<dsl::Document> set = base;
        set.push_back(constraint);
        sem::Elaboration elab = sem::elaborate(set);
        if (!elab.ok())
            throw std::invalid_argument("document " + constraint.id +
                                        " does not elaborate: " + elab.report.render());
        sim::RunSet runs = sim::enumerate_runs(elab.model, stimuli, rounds, cap);
        if (runs.truncated) throw ExplosionLimit(cap);
        std::set<std::string> observable = runs.observable();
        if (first) {
            common = std::move(observable);
            first = false;
        } else {
            std::set<std::string> next;
            std::set_intersection(common.begin(), common.end(), observable.begin(),
                                  observable.end(), std::inserter(next, next.begin()));
            common = std::move(next);
        }
        if (common.empty()) break;
    }

    if (common.empty())
        verdict.reject("R-CONS-EMPTY",
                       "no common trace at bound " + std::to_string(rounds));
    else
        verdict.witness = *common.begin();
    return verdict;
}

}  // namespace sysmodel::refine
