#include "sysmodel/sem/elaborate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sysmodel/core/errors.hpp"
#include "sysmodel/sem/checks.hpp"
#include "sysmodel/sem/views.hpp"

namespace sysmodel::sem {

using dsl::DocKind;
using dsl::Document;

namespace {

bool class_decl_equal(const dsl::ClassDecl& a, const dsl::ClassDecl& b) {
    if (a.name != b.name || a.parent != b.parent) return false;
    if (a.attrs.size() != b.attrs.size() || a.methods.size() != b.methods.size() ||
        a.invariants.size() != b.invariants.size())
        return false;
    for (std::size_t i = 0; i < a.attrs.size(); ++i)
        if (a.attrs[i].name != b.attrs[i].name || a.attrs[i].type != b.attrs[i].type)
            return false;
    for (std::size_t i = 0; i < a.methods.size(); ++i) {
        const auto& ma = a.methods[i];
        const auto& mb = b.methods[i];
        if (ma.name != mb.name || ma.result != mb.result ||
            ma.params.size() != mb.params.size())
            return false;
        for (std::size_t j = 0; j < ma.params.size(); ++j)
            if (ma.params[j].name != mb.params[j].name ||
                ma.params[j].type != mb.params[j].type)
                return false;
    }
    for (std::size_t i = 0; i < a.invariants.size(); ++i)
        if (!expr_equal(a.invariants[i].expr, b.invariants[i].expr)) return false;
    return true;
}

Signature signature_of(const dsl::ClassDecl& decl) {
    Signature sig;
    for (const auto& a : decl.attrs) sig.attributes.push_back({a.name, a.type});
    for (const auto& m : decl.methods) sig.methods.push_back({m.name, m.params, m.result});
    return sig;
}

// Merge requires per-class declarations to be disjoint or identical.
ClassTable merge_class_diagrams(const std::vector<const Document*>& cds,
                                ValidationReport& report) {
    ClassTable table;
    std::map<ClassName, const dsl::ClassDecl*> seen;
    for (const Document* doc : cds) {
        const auto& body = doc->as_class_diagram();
        for (const auto& decl : body.classes) {
            auto it = seen.find(decl.name);
            if (it != seen.end()) {
                if (!class_decl_equal(*it->second, decl))
                    report.error("E-CD-MERGE",
                                 "class " + decl.name +
                                     " is declared differently in another diagram",
                                 doc->id, decl.span);
                continue;
            }
            seen[decl.name] = &decl;
            ClassInfo info;
            info.sig = signature_of(decl);
            info.parent = decl.parent;
            for (const auto& inv : decl.invariants) info.invariants.push_back(inv.expr);
            info.doc_id = doc->id;
            info.span = decl.span;
            table.classes[decl.name] = std::move(info);
        }
        for (const auto& assoc : body.assocs) {
            auto it = table.associations.find(assoc.name);
            if (it != table.associations.end()) {
                const Association& prev = it->second;
                if (prev.source != assoc.source || prev.target != assoc.target)
                    report.error("E-CD-MERGE",
                                 "association " + assoc.name +
                                     " is declared differently in another diagram",
                                 doc->id, assoc.span);
                continue;
            }
            table.associations[assoc.name] =
                Association{assoc.name, assoc.source, assoc.target, doc->id, assoc.span};
        }
    }
    return table;
}

void check_state_diagram(const Document& doc, const ClassTable& table,
                         ValidationReport& report) {
    const auto& body = doc.as_state_diagram();
    const Automaton& a = body.automaton;
    if (!table.has_class(a.owner_class)) {
        report.error("E-SD-CLASS", "state diagram for unknown class " + a.owner_class,
                     doc.id, body.span);
        return;
    }
    Signature sig;
    TypeEnv attrs;
    try {
        sig = effective_signature(a.owner_class, table);
        attrs = effective_attributes(a.owner_class, table);
    } catch (const Error&) {
        return;  // reported by check_class_table
    }

    for (const auto& tr : a.transitions) {
        const Method* m = sig.find_method(tr.trigger);
        if (!m || m->params.size() != tr.formals.size()) {
            report.error("E-SIG-TRIGGER",
                         "trigger " + tr.trigger + "/" +
                             std::to_string(tr.formals.size()) +
                             " is not in the signature of " + a.owner_class,
                         doc.id, tr.span);
            continue;
        }
        TypeEnv scope = attrs;
        for (std::size_t i = 0; i < tr.formals.size(); ++i)
            scope[tr.formals[i]] = m->params[i].type;

        std::string msg;
        if (tr.guard) {
            auto t = type_check(tr.guard, scope, &msg);
            if (!t)
                report.error("E-EXPR-TYPE", "guard: " + msg, doc.id, tr.span);
            else if (*t != ValueType::Bool)
                report.error("E-EXPR-TYPE", "guard is not Bool", doc.id, tr.span);
        }
        for (const auto& item : tr.actions) {
            if (auto* assign = std::get_if<Assign>(&item)) {
                auto it = attrs.find(assign->attribute);
                if (it == attrs.end()) {
                    report.error("E-EXPR-TYPE",
                                 "assignment to unknown attribute " + assign->attribute,
                                 doc.id, assign->span);
                    continue;
                }
                auto t = type_check(assign->value, scope, &msg);
                if (!t)
                    report.error("E-EXPR-TYPE", "assignment: " + msg, doc.id,
                                 assign->span);
                else if (*t != it->second)
                    report.error("E-EXPR-TYPE",
                                 "assignment to " + assign->attribute + " expects " +
                                     type_name(it->second),
                                 doc.id, assign->span);
            } else {
                const auto& emit = std::get<Emit>(item);
                auto t = type_check(emit.target, scope, &msg);
                if (!t)
                    report.error("E-EXPR-TYPE", "emit target: " + msg, doc.id,
                                 emit.span);
                else if (*t != ValueType::ObjectRef)
                    report.error("E-EXPR-TYPE", "emit target is not an ObjectRef",
                                 doc.id, emit.span);
                for (const auto& arg : emit.args)
                    if (!type_check(arg, scope, &msg))
                        report.error("E-EXPR-TYPE", "emit argument: " + msg, doc.id,
                                     emit.span);
            }
        }
    }
}

}  // namespace

ClassTable merge_class_tables(const std::vector<Document>& docs,
                              ValidationReport* report) {
    std::vector<const Document*> cds;
    for (const auto& d : docs)
        if (d.kind == DocKind::ClassDiagram) cds.push_back(&d);
    std::stable_sort(cds.begin(), cds.end(),
                     [](const Document* a, const Document* b) { return a->id < b->id; });
    ValidationReport local;
    ClassTable t = merge_class_diagrams(cds, report ? *report : local);
    return t;
}

Elaboration elaborate(const std::vector<Document>& docs, const RefersTo& refers_to,
                      const ElaborateOptions& options) {
    Elaboration result;
    ValidationReport& report = result.report;

    // Sort by document id so the outcome is independent of input order.
    std::vector<const Document*> sorted;
    sorted.reserve(docs.size());
    for (const auto& d : docs) sorted.push_back(&d);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Document* a, const Document* b) { return a->id < b->id; });

    std::vector<const Document*> cds, ods, sds, qds;
    for (const Document* d : sorted) {
        switch (d->kind) {
            case DocKind::ClassDiagram: cds.push_back(d); break;
            case DocKind::ObjectDiagram: ods.push_back(d); break;
            case DocKind::StateDiagram: sds.push_back(d); break;
            case DocKind::SequenceDiagram: qds.push_back(d); break;
            case DocKind::Text:
                report.warning("W-TEXT-VIEW",
                               "text document carries no formal view", d->id, {});
                break;
        }
    }

    if (cds.empty()) {
        report.error("E-NO-CD", "document set contains no class diagram");
        report.sort();
        return result;
    }

    ClassTable table = merge_class_diagrams(cds, report);
    report.merge(check_class_table(table));

    // State diagrams: context conditions plus at most one automaton per class.
    std::map<ClassName, const Document*> automaton_docs;
    for (const Document* doc : sds) {
        const auto& body = doc->as_state_diagram();
        check_state_diagram(*doc, table, report);
        auto [it, inserted] = automaton_docs.emplace(body.automaton.owner_class, doc);
        if (!inserted)
            report.error("E-DUP-AUTOMATON",
                         "class " + body.automaton.owner_class +
                             " already has a state diagram (" + it->second->id + ")",
                         doc->id, body.span);
    }

    for (const Document* doc : ods) report.merge(check_object_diagram(*doc, table));
    for (const Document* doc : qds) report.merge(check_sequence_diagram(*doc, table));

    // Designated object diagram for the initial configuration.
    const Document* init_doc = nullptr;
    if (options.initial_doc_id) {
        for (const Document* doc : ods)
            if (doc->id == *options.initial_doc_id) init_doc = doc;
        if (!init_doc)
            report.error("E-NO-INIT", "designated object diagram " +
                                          *options.initial_doc_id + " is not in the set");
    } else if (ods.size() == 1) {
        init_doc = ods.front();
    } else if (ods.size() > 1) {
        report.error("E-AMBIG-INIT",
                     "several object diagrams; designate one for the initial objects",
                     ods[1]->id, {});
    }

    // Behavioral documents should depend on some class diagram when a
    // dependency relation is supplied at all.
    if (!refers_to.empty()) {
        std::set<std::string> cd_ids;
        for (const Document* d : cds) cd_ids.insert(d->id);
        std::multimap<std::string, std::string> edges(refers_to.begin(), refers_to.end());
        auto reaches_cd = [&](const std::string& from) {
            std::set<std::string> seen{from};
            std::vector<std::string> work{from};
            while (!work.empty()) {
                std::string cur = work.back();
                work.pop_back();
                if (cd_ids.count(cur)) return true;
                auto [lo, hi] = edges.equal_range(cur);
                for (auto it = lo; it != hi; ++it)
                    if (seen.insert(it->second).second) work.push_back(it->second);
            }
            return false;
        };
        for (const auto& group : {sds, qds})
            for (const Document* doc : group)
                if (!reaches_cd(doc->id))
                    report.warning("W-REFERS",
                                   "document does not refer to any class diagram",
                                   doc->id, {});
    }

    report.sort();
    if (!report.ok()) return result;

    SystemModel model;
    model.class_table = table;
    for (const auto& [cls, doc] : automaton_docs)
        model.automata[cls] = doc->as_state_diagram().automaton;
    for (const auto& [cls, info] : table.classes) {
        if (model.automata.count(cls)) continue;
        // No behavioral constraint: a single-state automaton that consumes
        // every message and emits nothing.
        Automaton stub;
        stub.owner_class = cls;
        stub.control_states = {"s0"};
        stub.initial_controls = {"s0"};
        model.automata[cls] = std::move(stub);
    }

    if (init_doc) {
        const auto& body = init_doc->as_object_diagram();
        for (const auto& o : body.objects) {
            ObjectId id{o.name, o.cls};
            ObjectState state = model.fresh_state(o.cls);
            for (const auto& b : o.bindings) state.valuation[b.attribute] = b.value;
            model.initial_objects.emplace_back(id, std::move(state));
        }
        for (const auto& c : body.creatables) {
            ObjectId owner = ObjectId::env();
            if (c.owner != "env") {
                std::string owner_cls;
                for (const auto& o : body.objects)
                    if (o.name == c.owner) owner_cls = o.cls;
                for (const auto& cc : body.creatables)
                    if (cc.name == c.owner) owner_cls = cc.cls;
                owner = ObjectId{c.owner, owner_cls};
            }
            model.creatables[owner].insert(ObjectId{c.name, c.cls});
        }
    }

    try {
        result.model = make_model(std::move(model));
    } catch (const ModelError& e) {
        report.error("E-MODEL", e.what(), init_doc ? init_doc->id : cds.front()->id, {});
        report.sort();
    }
    return result;
}

}  // namespace sysmodel::sem
