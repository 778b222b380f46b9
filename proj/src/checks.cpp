#include "sysmodel/sem/checks.hpp"

namespace sysmodel::sem {

using dsl::Document;

ValidationReport check_object_diagram(const Document& od, const ClassTable& t) {
    ValidationReport report;
    const auto& body = od.as_object_diagram();

    auto class_of = [&](const std::string& obj) -> const std::string* {
        for (const auto& o : body.objects)
            if (o.name == obj) return &o.cls;
        for (const auto& c : body.creatables)
            if (c.name == obj) return &c.cls;
        return nullptr;
    };

    auto check_class = [&](const std::string& cls, Span span) {
        if (t.has_class(cls)) return true;
        report.error("E-UNKNOWN-CLASS", "unknown class " + cls, od.id, span);
        return false;
    };

    for (const auto& o : body.objects) {
        if (!check_class(o.cls, o.span)) continue;
        TypeEnv attrs;
        try {
            attrs = effective_attributes(o.cls, t);
        } catch (const Error&) {
            continue;  // a broken class table reports elsewhere
        }
        for (const auto& b : o.bindings) {
            auto it = attrs.find(b.attribute);
            if (it == attrs.end()) {
                report.error("E-UNKNOWN-ATTR",
                             "class " + o.cls + " has no attribute " + b.attribute,
                             od.id, b.span);
            } else if (type_of(b.value) != it->second) {
                report.error("E-ATTR-TYPE",
                             "attribute " + b.attribute + " of " + o.name +
                                 " expects " + type_name(it->second),
                             od.id, b.span);
            }
        }
    }

    for (const auto& c : body.creatables) check_class(c.cls, c.span);

    for (const auto& l : body.links) {
        auto it = t.associations.find(l.assoc);
        if (it == t.associations.end()) {
            report.error("E-UNKNOWN-ASSOC", "unknown association " + l.assoc, od.id,
                         l.span);
            continue;
        }
        const Association& assoc = it->second;
        const std::string* src_cls = class_of(l.source);
        const std::string* dst_cls = class_of(l.target);
        // Endpoint classes must be the declared endpoint or a subclass.
        if (src_cls && t.has_class(*src_cls) && !t.subclass_of(*src_cls, assoc.source))
            report.error("E-ASSOC-ENDPOINT",
                         "link " + l.assoc + ": " + l.source + " is not a " +
                             assoc.source,
                         od.id, l.span);
        if (dst_cls && t.has_class(*dst_cls) && !t.subclass_of(*dst_cls, assoc.target))
            report.error("E-ASSOC-ENDPOINT",
                         "link " + l.assoc + ": " + l.target + " is not a " +
                             assoc.target,
                         od.id, l.span);
    }

    report.sort();
    return report;
}

ValidationReport check_sequence_diagram(const Document& qd, const ClassTable& t) {
    ValidationReport report;
    const auto& body = qd.as_sequence_diagram();

    for (const auto& l : body.lifelines) {
        if (!t.has_class(l.cls))
            report.error("E-QD-CLASS",
                         "lifeline " + l.role + " has unknown class " + l.cls, qd.id,
                         l.span);
    }

    for (const auto* e : body.events()) {
        if (e->to == "env") continue;  // the environment accepts anything
        const auto* lifeline = body.find_lifeline(e->to);
        if (!lifeline || !t.has_class(lifeline->cls)) continue;
        Signature sig;
        try {
            sig = effective_signature(lifeline->cls, t);
        } catch (const Error&) {
            continue;
        }
        const Method* m = sig.find_method(e->selector);
        if (!m) {
            report.error("E-SELECTOR",
                         "class " + lifeline->cls + " has no method " + e->selector,
                         qd.id, e->span);
            continue;
        }
        if (m->params.size() != e->args.size()) {
            report.error("E-ARITY",
                         e->selector + " expects " + std::to_string(m->params.size()) +
                             " arguments, got " + std::to_string(e->args.size()),
                         qd.id, e->span);
            continue;
        }
        for (std::size_t i = 0; i < e->args.size(); ++i) {
            if (type_of(e->args[i]) != m->params[i].type)
                report.error("E-ARG-TYPE",
                             "argument " + std::to_string(i + 1) + " of " +
                                 e->selector + " expects " +
                                 type_name(m->params[i].type),
                             qd.id, e->span);
        }
    }

    report.sort();
    return report;
}

}  // namespace sysmodel::sem
