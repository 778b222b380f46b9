#include "sysmodel/refine/class_refinement.hpp"

#include <stdexcept>

#include "sysmodel/core/errors.hpp"

namespace sysmodel::refine {

using dsl::ClassDiagramBody;
using dsl::Document;

std::optional<bool> bounded_implication(const ExprPtr& hypothesis,
                                        const ExprPtr& conclusion, const TypeEnv& env,
                                        int lo, int hi, std::size_t max_vars) {
    std::set<std::string> vars = free_vars(hypothesis);
    for (const auto& v : free_vars(conclusion)) vars.insert(v);
    if (vars.size() > max_vars) return std::nullopt;

    std::vector<std::pair<std::string, ValueType>> dims;
    for (const auto& v : vars) {
        auto it = env.find(v);
        if (it == env.end()) return std::nullopt;
        if (it->second == ValueType::String || it->second == ValueType::ObjectRef)
            return std::nullopt;  // not enumerable at desk scale
        dims.emplace_back(v, it->second);
    }

    // Odometer over the finite domain.
    std::vector<std::int64_t> idx(dims.size(), 0);
    auto domain_size = [&](std::size_t i) -> std::int64_t {
        return dims[i].second == ValueType::Bool ? 2 : (hi - lo + 1);
    };
    while (true) {
        Valuation vals;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (dims[i].second == ValueType::Bool)
                vals[dims[i].first] = (idx[i] == 1);
            else
                vals[dims[i].first] = std::int64_t{lo + idx[i]};
        }
        try {
            Value h = eval(hypothesis, vals);
            if (std::get<bool>(h)) {
                Value c = eval(conclusion, vals);
                if (!std::get<bool>(c)) return false;
            }
        } catch (const EvaluationError&) {
            // Points where either side faults (division by zero) do not
            // witness a failed implication.
        }
        // advance odometer
        std::size_t i = 0;
        for (; i < dims.size(); ++i) {
            if (++idx[i] < domain_size(i)) break;
            idx[i] = 0;
        }
        if (i == dims.size()) break;
    }
    return true;
}

namespace {

ExprPtr conjunction(const std::vector<dsl::InvariantDecl>& invs) {
    ExprPtr out;
    for (const auto& inv : invs)
        out = out ? make_binary(BinaryOp::And, out, inv.expr) : inv.expr;
    return out;  // null means `true`
}

ClassTable table_of(const ClassDiagramBody& body) {
    ClassTable t;
    for (const auto& decl : body.classes) {
        ClassInfo info;
        for (const auto& a : decl.attrs) info.sig.attributes.push_back({a.name, a.type});
        for (const auto& m : decl.methods)
            info.sig.methods.push_back({m.name, m.params, m.result});
        info.parent = decl.parent;
        t.classes[decl.name] = std::move(info);
    }
    return t;
}

}  // namespace

RefinementVerdict refine_class_diagram(const Document& old_doc, const Document& new_doc) {
    if (old_doc.kind != dsl::DocKind::ClassDiagram ||
        new_doc.kind != dsl::DocKind::ClassDiagram)
        throw std::invalid_argument("refine_class_diagram needs two class diagrams");

    RefinementVerdict verdict;
    verdict.checked_rules = {"R-CD-DELETE", "R-CD-RETYPE", "R-CD-INHERIT", "R-CD-INV"};

    const auto& old_body = old_doc.as_class_diagram();
    const auto& new_body = new_doc.as_class_diagram();
    ClassTable new_table = table_of(new_body);

    for (const auto& oc : old_body.classes) {
        const dsl::ClassDecl* nc = new_body.find_class(oc.name);
        if (!nc) {
            verdict.reject("R-CD-DELETE", "class " + oc.name + " was removed",
                           old_doc.id, oc.span);
            continue;
        }
        if (oc.parent && nc->parent != oc.parent) {
            verdict.reject("R-CD-INHERIT",
                           "class " + oc.name + " no longer extends " + *oc.parent,
                           new_doc.id, nc->span);
        }

        for (const auto& oa : oc.attrs) {
            const dsl::AttrDecl* na = nullptr;
            for (const auto& cand : nc->attrs)
                if (cand.name == oa.name) na = &cand;
            if (!na)
                verdict.reject("R-CD-DELETE",
                               "attribute " + oc.name + "." + oa.name + " was removed",
                               old_doc.id, oa.span);
            else if (na->type != oa.type)
                verdict.reject("R-CD-RETYPE",
                               "attribute " + oc.name + "." + oa.name + " changed type",
                               new_doc.id, na->span);
        }

        for (const auto& om : oc.methods) {
            const dsl::MethodDecl* nm = nullptr;
            for (const auto& cand : nc->methods)
                if (cand.name == om.name) nm = &cand;
            if (!nm) {
                verdict.reject("R-CD-DELETE",
                               "method " + oc.name + "." + om.name + " was removed",
                               old_doc.id, om.span);
                continue;
            }
            bool same = nm->result == om.result && nm->params.size() == om.params.size();
            for (std::size_t i = 0; same && i < nm->params.size(); ++i)
                same = nm->params[i].type == om.params[i].type;
            if (!same)
                verdict.reject("R-CD-RETYPE",
                               "method " + oc.name + "." + om.name +
                                   " changed its signature",
                               new_doc.id, nm->span);
        }

        // The new invariant must imply the old one.
        ExprPtr old_inv = conjunction(oc.invariants);
        if (old_inv) {
            ExprPtr new_inv = conjunction(nc->invariants);
            if (!new_inv) new_inv = make_literal(Value{true});
            TypeEnv env;
            try {
                env = effective_attributes(oc.name, new_table);
            } catch (const Error&) {
                // fall through with the declared attributes only
                for (const auto& a : nc->attrs) env[a.name] = a.type;
            }
            auto implied = bounded_implication(new_inv, old_inv, env);
            if (!implied) {
                // Domain not enumerable: accept only when every old
                // invariant line reappears verbatim.
                verdict.notes.push_back(
                    "invariant check for " + oc.name +
                    " degraded to conjunct matching (domain not enumerable)");
                for (const auto& oi : oc.invariants) {
                    bool found = false;
                    for (const auto& ni : nc->invariants)
                        if (expr_equal(oi.expr, ni.expr)) found = true;
                    if (!found)
                        verdict.reject("R-CD-INV",
                                       "invariant of " + oc.name +
                                           " is not preserved syntactically",
                                       new_doc.id, nc->span);
                }
            } else if (!*implied) {
                verdict.reject("R-CD-INV",
                               "new invariant of " + oc.name +
                                   " does not imply the old one",
                               new_doc.id, nc->span);
            }
        }
    }

    for (const auto& oa : old_body.assocs) {
        const dsl::AssocDecl* na = new_body.find_assoc(oa.name);
        if (!na)
            verdict.reject("R-CD-DELETE", "association " + oa.name + " was removed",
                           old_doc.id, oa.span);
        else if (na->source != oa.source || na->target != oa.target)
            verdict.reject("R-CD-RETYPE",
                           "association " + oa.name + " changed its endpoints",
                           new_doc.id, na->span);
    }

    return verdict;
}

}  // namespace sysmodel::refine
