#include "sysmodel/refine/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "sysmodel/dsl/parser.hpp"
#include "sysmodel/dsl/printer.hpp"
#include "sysmodel/sem/checks.hpp"

namespace sysmodel::refine {

using dsl::Document;

namespace {

struct ProjectedOutput {
    std::string selector;
    std::vector<Value> args;
    std::string to_role;
};

/// One received trigger with the reaction observed on the lifeline.
struct ProjectedLetter {
    std::string selector;
    std::vector<Value> args;
    std::vector<ProjectedOutput> outputs;
    std::optional<std::string> label;  // lifeline state after the reaction
    Span span;
};

struct Projection {
    std::optional<std::string> initial_label;
    std::vector<ProjectedLetter> word;
};

std::string find_target_role(const dsl::SequenceDiagramBody& body,
                             const ClassName& target_class, const std::string& doc_id) {
    std::vector<std::string> roles;
    for (const auto& l : body.lifelines)
        if (l.cls == target_class) roles.push_back(l.role);
    if (roles.empty()) return "";
    if (roles.size() > 1)
        throw AmbiguousLifeline("several lifelines of class " + target_class + " in " +
                                doc_id);
    return roles.front();
}

Projection project(const dsl::SequenceDiagramBody& body, const std::string& role,
                   const std::string& doc_id) {
    Projection p;
    for (const auto& step : body.steps) {
        if (auto* e = std::get_if<dsl::EventDecl>(&step)) {
            if (e->from == role) {
                if (p.word.empty())
                    throw ProjectionError("lifeline " + role + " in " + doc_id +
                                          " emits before receiving any message");
                p.word.back().outputs.push_back({e->selector, e->args, e->to});
            }
            if (e->to == role) {
                ProjectedLetter letter;
                letter.selector = e->selector;
                letter.args = e->args;
                letter.span = e->span;
                p.word.push_back(std::move(letter));
            }
        } else {
            const auto& s = std::get<dsl::StateLabelDecl>(step);
            if (s.role != role) continue;
            auto& slot = p.word.empty() ? p.initial_label : p.word.back().label;
            if (slot && *slot != s.label)
                throw LabelConflict("lifeline " + role + " in " + doc_id +
                                    " is labeled both " + *slot + " and " + s.label);
            slot = s.label;
        }
    }
    return p;
}

/// Merge key of a letter: the synthesized transition it induces. Trigger
/// argument literals are not part of the key (guards are never emitted),
/// the reaction is.
std::string letter_key(const ProjectedLetter& letter) {
    std::ostringstream out;
    out << letter.selector << '/';
    for (const auto& o : letter.outputs) {
        out << o.selector << '(';
        for (std::size_t i = 0; i < o.args.size(); ++i) {
            if (i) out << ',';
            out << render_value(o.args[i]);
        }
        out << ")->" << o.to_role << ';';
    }
    return out.str();
}

std::vector<std::string> trigger_formals(const ClassTable& t, const ClassName& cls,
                                         const ProjectedLetter& letter) {
    if (t.has_class(cls)) {
        try {
            Signature sig = effective_signature(cls, t);
            if (const Method* m = sig.find_method(letter.selector)) {
                std::vector<std::string> names;
                for (const auto& p : m->params) names.push_back(p.name);
                if (names.size() == letter.args.size()) return names;
            }
        } catch (const Error&) {
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < letter.args.size(); ++i)
        names.push_back("p" + std::to_string(i + 1));
    return names;
}

Transition make_transition(const std::string& source, const std::string& target,
                           const ProjectedLetter& letter, const ClassTable& t,
                           const ClassName& cls) {
    Transition tr;
    tr.source = source;
    tr.target = target;
    tr.trigger = letter.selector;
    tr.formals = trigger_formals(t, cls, letter);
    for (const auto& o : letter.outputs) {
        Emit e;
        e.selector = o.selector;
        for (const auto& v : o.args) e.args.push_back(make_literal(v));
        e.target = make_literal(Value{RefValue{o.to_role}});
        tr.actions.emplace_back(std::move(e));
    }
    return tr;
}

// Documents sorted by id keep the construction input-order independent.
std::vector<const Document*> sorted_docs(const std::vector<Document>& docs) {
    std::vector<const Document*> out;
    for (const auto& d : docs) out.push_back(&d);
    std::stable_sort(out.begin(), out.end(),
                     [](const Document* a, const Document* b) { return a->id < b->id; });
    return out;
}

Automaton merge_trie(const std::vector<std::pair<const Document*, Projection>>& inputs,
                     const SynthesisOptions& opts, const ClassTable& t) {
    Automaton a;
    a.owner_class = opts.target_class;
    a.control_states = {"S0"};
    a.initial_controls = {"S0"};

    std::map<std::pair<std::string, std::string>, std::string> edges;  // (src,key)->dst
    for (const auto& [doc, projection] : inputs) {
        std::string cur = "S0";
        std::string prev_key;
        for (const auto& letter : projection.word) {
            const std::string key = letter_key(letter);
            if (opts.loop_folding && key == prev_key) {
                // Immediate repetition folds into a self-loop.
                if (!edges.count({cur, key + "@self"})) {
                    edges[{cur, key + "@self"}] = cur;
                    a.transitions.push_back(
                        make_transition(cur, cur, letter, t, opts.target_class));
                }
                continue;
            }
            auto it = edges.find({cur, key});
            std::string next;
            if (it != edges.end()) {
                next = it->second;
            } else {
                next = "S" + std::to_string(a.control_states.size());
                a.control_states.push_back(next);
                edges[{cur, key}] = next;
                a.transitions.push_back(
                    make_transition(cur, next, letter, t, opts.target_class));
            }
            prev_key = key;
            cur = next;
        }
    }
    return a;
}

Automaton merge_labels(const std::vector<std::pair<const Document*, Projection>>& inputs,
                       const SynthesisOptions& opts, const ClassTable& t) {
    // Union-find over per-scenario positions; equal labels merge classes.
    struct Position {
        std::size_t seq;
        std::size_t index;  // 0 = before the first trigger
    };
    std::vector<Position> positions;
    std::vector<std::size_t> parent;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

    std::vector<std::vector<std::size_t>> pos_id;  // per seq, per index
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const auto& word = inputs[s].second.word;
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i <= word.size(); ++i) {
            ids.push_back(positions.size());
            positions.push_back({s, i});
            parent.push_back(parent.size());
        }
        pos_id.push_back(std::move(ids));
    }

    // All scenarios start in one state.
    for (std::size_t s = 1; s < inputs.size(); ++s) unite(pos_id[s][0], pos_id[0][0]);

    // Positions with equal labels merge.
    std::map<std::string, std::size_t> by_label;
    auto merge_label = [&](const std::optional<std::string>& label, std::size_t id) {
        if (!label) return;
        auto [it, inserted] = by_label.emplace(*label, id);
        if (!inserted) unite(id, it->second);
    };
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const auto& projection = inputs[s].second;
        merge_label(projection.initial_label, pos_id[s][0]);
        for (std::size_t i = 0; i < projection.word.size(); ++i)
            merge_label(projection.word[i].label, pos_id[s][i + 1]);
    }

    // A class carrying two distinct labels is inconsistent.
    std::map<std::size_t, std::string> class_label;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const auto& projection = inputs[s].second;
        for (std::size_t i = 0; i < pos_id[s].size(); ++i) {
            std::optional<std::string> label =
                i == 0 ? projection.initial_label : projection.word[i - 1].label;
            if (!label) continue;
            std::size_t root = find(pos_id[s][i]);
            auto [it, inserted] = class_label.emplace(root, *label);
            if (!inserted && it->second != *label)
                throw LabelConflict("labels " + it->second + " and " + *label +
                                    " name the same synthesized state");
        }
    }

    Automaton a;
    a.owner_class = opts.target_class;
    std::map<std::size_t, std::string> state_name;
    std::size_t fresh = 0;
    auto name_of = [&](std::size_t id) -> const std::string& {
        std::size_t root = find(id);
        auto it = state_name.find(root);
        if (it == state_name.end()) {
            std::string name;
            auto lbl = class_label.find(root);
            if (lbl != class_label.end())
                name = lbl->second;
            else
                name = "S" + std::to_string(fresh++);
            it = state_name.emplace(root, std::move(name)).first;
            a.control_states.push_back(it->second);
        }
        return it->second;
    };

    a.initial_controls.push_back(name_of(pos_id[0][0]));
    std::set<std::string> edge_seen;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const auto& word = inputs[s].second.word;
        for (std::size_t i = 0; i < word.size(); ++i) {
            const std::string& src = name_of(pos_id[s][i]);
            const std::string& dst = name_of(pos_id[s][i + 1]);
            std::string edge = src + '\x1f' + letter_key(word[i]) + '\x1f' + dst;
            if (!edge_seen.insert(edge).second) continue;
            a.transitions.push_back(
                make_transition(src, dst, word[i], t, opts.target_class));
        }
    }
    return a;
}

}  // namespace

Document synthesize_state_diagram(const std::vector<Document>& seqs,
                                  const SynthesisOptions& opts, const ClassTable& t) {
    if (seqs.empty())
        throw std::invalid_argument("synthesis needs at least one sequence diagram");

    std::vector<std::pair<const Document*, Projection>> inputs;
    bool any_received = false;
    for (const Document* doc : sorted_docs(seqs)) {
        if (doc->kind != dsl::DocKind::SequenceDiagram)
            throw std::invalid_argument("synthesis input " + doc->id +
                                        " is not a sequence diagram");
        const auto& body = doc->as_sequence_diagram();
        std::string role = find_target_role(body, opts.target_class, doc->id);
        if (role.empty())
            throw std::invalid_argument("class " + opts.target_class +
                                        " has no lifeline in " + doc->id);
        Projection p = project(body, role, doc->id);
        any_received |= !p.word.empty();
        inputs.emplace_back(doc, std::move(p));
    }
    if (!any_received)
        throw ProjectionEmpty("class " + opts.target_class +
                              " never receives a message in the given scenarios");

    Automaton a = opts.merge == MergeStrategy::TrieByPrefix
                      ? merge_trie(inputs, opts, t)
                      : merge_labels(inputs, opts, t);

    // Serialize and reparse so the result carries real spans and source.
    dsl::StateDiagramBody body;
    body.automaton = std::move(a);
    std::string text = dsl::serialize_body(dsl::DocKind::StateDiagram, dsl::Body{body});
    return dsl::parse(dsl::DocKind::StateDiagram, text, "synth:" + opts.target_class);
}

RefinementVerdict check_seq_against_state(const Document& qd, const Document& sd,
                                          const ClassTable& t) {
    if (qd.kind != dsl::DocKind::SequenceDiagram || sd.kind != dsl::DocKind::StateDiagram)
        throw std::invalid_argument(
            "check_seq_against_state needs a sequence diagram and a state diagram");

    RefinementVerdict verdict;
    verdict.checked_rules = {"R-QD-NOLIFELINE", "R-QD-INVALID", "R-QD-NOPATH"};

    const Automaton& a = sd.as_state_diagram().automaton;
    const auto& body = qd.as_sequence_diagram();

    if (!t.classes.empty()) {
        ValidationReport pre = sem::check_sequence_diagram(qd, t);
        if (!pre.ok()) {
            const Finding& f = pre.findings.front();
            verdict.reject("R-QD-INVALID", "sequence diagram is not valid: " + f.message,
                           qd.id, f.span);
            return verdict;
        }
    }

    std::string role = find_target_role(body, a.owner_class, qd.id);
    if (role.empty()) {
        verdict.reject("R-QD-NOLIFELINE",
                       "no lifeline of class " + a.owner_class + " in " + qd.id, qd.id,
                       {});
        return verdict;
    }

    Projection projection;
    try {
        projection = project(body, role, qd.id);
    } catch (const ProjectionError& e) {
        verdict.reject("R-QD-NOPATH", e.what(), qd.id, {});
        return verdict;
    }
    const auto& word = projection.word;

    std::set<std::string> notes;
    std::size_t deepest = 0;

    // A transition matches a letter when trigger and reaction agree;
    // attribute-dependent guards and arguments are assumed to fit.
    auto matches = [&](const Transition& tr, const ProjectedLetter& letter) {
        if (tr.trigger != letter.selector || tr.formals.size() != letter.args.size())
            return false;
        Valuation params;
        for (std::size_t i = 0; i < tr.formals.size(); ++i)
            params[tr.formals[i]] = letter.args[i];
        auto param_only = [&](const ExprPtr& e) {
            for (const auto& v : free_vars(e))
                if (!params.count(v)) return false;
            return true;
        };
        if (tr.guard) {
            if (!param_only(tr.guard)) {
                notes.insert("guard over attributes assumed satisfiable");
            } else {
                try {
                    if (!std::get<bool>(eval(tr.guard, params))) return false;
                } catch (const Error&) {
                    return false;
                }
            }
        }
        auto emits = tr.emits();
        if (emits.size() != letter.outputs.size()) return false;
        for (std::size_t i = 0; i < emits.size(); ++i) {
            const Emit& e = *emits[i];
            const ProjectedOutput& o = letter.outputs[i];
            if (e.selector != o.selector || e.args.size() != o.args.size()) return false;
            if (param_only(e.target)) {
                try {
                    Value v = eval(e.target, params);
                    if (std::get<RefValue>(v).name != o.to_role) return false;
                } catch (const Error&) {
                    return false;
                }
            } else {
                notes.insert("emit target over attributes assumed to match");
            }
            for (std::size_t j = 0; j < e.args.size(); ++j) {
                if (param_only(e.args[j])) {
                    try {
                        if (eval(e.args[j], params) != o.args[j]) return false;
                    } catch (const Error&) {
                        return false;
                    }
                } else {
                    notes.insert("emit argument over attributes assumed to match");
                }
            }
        }
        return true;
    };

    std::function<bool(const std::string&, std::size_t)> walk =
        [&](const std::string& state, std::size_t i) -> bool {
        deepest = std::max(deepest, i);
        if (i == word.size()) return true;
        for (const auto& tr : a.transitions) {
            if (tr.source != state) continue;
            if (!matches(tr, word[i])) continue;
            if (walk(tr.target, i + 1)) return true;
        }
        return false;
    };

    bool accepted = false;
    for (const auto& init : a.initial_controls)
        if (walk(init, 0)) accepted = true;

    if (!accepted) {
        if (word.empty()) {
            verdict.reject("R-QD-NOPATH", "automaton of " + sd.id +
                                              " has no initial state", qd.id, {});
        } else {
            const ProjectedLetter& at = word[std::min(deepest, word.size() - 1)];
            verdict.reject("R-QD-NOPATH",
                           "no path of " + sd.id + " continues with " + at.selector +
                               " at step " + std::to_string(deepest + 1),
                           qd.id, at.span);
        }
    }
    verdict.notes.assign(notes.begin(), notes.end());
    return verdict;
}

}  // namespace sysmodel::refine
