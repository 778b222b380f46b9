#include "sysmodel/core/class_table.hpp"

#include <algorithm>

#include "sysmodel/core/errors.hpp"

namespace sysmodel {

std::vector<ValueType> Method::param_types() const {
    std::vector<ValueType> out;
    out.reserve(params.size());
    for (const auto& p : params) out.push_back(p.type);
    return out;
}

bool same_member(const Method& a, const Method& b) {
    return a.name == b.name && a.result == b.result &&
           a.param_types() == b.param_types();
}

const Attribute* Signature::find_attribute(const std::string& name) const {
    for (const auto& a : attributes)
        if (a.name == name) return &a;
    return nullptr;
}

const Method* Signature::find_method(const std::string& name) const {
    for (const auto& m : methods)
        if (m.name == name) return &m;
    return nullptr;
}

bool ClassTable::subclass_of(const ClassName& c, const ClassName& d) const {
    ClassName cur = c;
    std::size_t hops = 0;
    while (true) {
        if (cur == d) return true;
        auto it = classes.find(cur);
        if (it == classes.end() || !it->second.parent) return false;
        cur = *it->second.parent;
        if (++hops > classes.size()) return false;  // parent cycle
    }
}

std::vector<ClassName> ClassTable::ancestry(const ClassName& c) const {
    if (!has_class(c)) throw UnknownClass(c);
    std::vector<ClassName> chain;
    ClassName cur = c;
    while (true) {
        chain.push_back(cur);
        auto it = classes.find(cur);
        if (it == classes.end() || !it->second.parent) break;
        cur = *it->second.parent;
        if (std::find(chain.begin(), chain.end(), cur) != chain.end()) break;
        if (!has_class(cur)) break;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

Signature effective_signature(const ClassName& c, const ClassTable& t) {
    Signature out;
    for (const auto& cls : t.ancestry(c)) {
        const Signature& sig = t.classes.at(cls).sig;
        for (const auto& attr : sig.attributes) {
            if (const Attribute* prev = out.find_attribute(attr.name)) {
                if (prev->type != attr.type)
                    throw ConflictingInheritedMember(c, attr.name);
                continue;  // identical redeclaration
            }
            out.attributes.push_back(attr);
        }
        for (const auto& m : sig.methods) {
            if (const Method* prev = out.find_method(m.name)) {
                if (!same_member(*prev, m)) throw ConflictingInheritedMember(c, m.name);
                continue;
            }
            out.methods.push_back(m);
        }
    }
    return out;
}

TypeEnv effective_attributes(const ClassName& c, const ClassTable& t) {
    TypeEnv env;
    for (const auto& a : effective_signature(c, t).attributes) env[a.name] = a.type;
    return env;
}

ValidationReport check_class_table(const ClassTable& t) {
    ValidationReport report;

    // Unknown parents and inheritance cycles.
    std::set<ClassName> on_cycle;
    for (const auto& [name, info] : t.classes) {
        if (info.parent && !t.has_class(*info.parent)) {
            report.error("E-CT-PARENT",
                         "class " + name + " extends unknown class " + *info.parent,
                         info.doc_id, info.span);
        }
        // Walk the parent chain; revisiting `name` means a cycle.
        ClassName cur = name;
        std::size_t hops = 0;
        while (hops++ <= t.classes.size()) {
            auto it = t.classes.find(cur);
            if (it == t.classes.end() || !it->second.parent) break;
            cur = *it->second.parent;
            if (cur == name) {
                on_cycle.insert(name);
                report.error("E-CT-CYCLE", "inheritance cycle through class " + name,
                             info.doc_id, info.span);
                break;
            }
        }
    }

    // Signature extension: redeclaring an inherited member must not change
    // its type. Skip classes on a cycle; their chain is not well defined.
    for (const auto& [name, info] : t.classes) {
        if (on_cycle.count(name)) continue;
        try {
            effective_signature(name, t);
        } catch (const ConflictingInheritedMember& e) {
            report.error("E-CT-SIG",
                         "class " + name + " changes inherited member '" +
                             e.member_name + "'",
                         info.doc_id, info.span);
        }
    }

    // Association endpoints must exist.
    for (const auto& [name, assoc] : t.associations) {
        for (const auto& end : {assoc.source, assoc.target}) {
            if (!t.has_class(end))
                report.error("E-CT-ASSOC",
                             "association " + name + " references unknown class " + end,
                             assoc.doc_id, assoc.span);
        }
    }

    // Invariants must be Bool over the effective attributes.
    for (const auto& [name, info] : t.classes) {
        if (on_cycle.count(name)) continue;
        TypeEnv env;
        try {
            env = effective_attributes(name, t);
        } catch (const Error&) {
            continue;  // already reported above
        }
        for (const auto& inv : info.invariants) {
            std::string msg;
            auto type = type_check(inv, env, &msg);
            if (!type)
                report.error("E-CT-INV", "invariant of class " + name + ": " + msg,
                             info.doc_id, inv->span.valid() ? inv->span : info.span);
            else if (*type != ValueType::Bool)
                report.error("E-CT-INV",
                             "invariant of class " + name + " is not Bool",
                             info.doc_id, inv->span.valid() ? inv->span : info.span);
        }
    }

    report.sort();
    return report;
}

}  // namespace sysmodel
