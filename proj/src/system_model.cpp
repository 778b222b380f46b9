#include "sysmodel/core/system_model.hpp"

#include "sysmodel/core/errors.hpp"

namespace sysmodel {

std::optional<ClassName> SystemModel::class_of(const std::string& name) const {
    if (auto id = find_object(name)) return id->cls;
    return std::nullopt;
}

std::optional<ObjectId> SystemModel::find_object(const std::string& name) const {
    for (const auto& [id, state] : initial_objects)
        if (id.name == name) return id;
    for (const auto& [owner, ids] : creatables)
        for (const auto& id : ids)
            if (id.name == name) return id;
    return std::nullopt;
}

bool SystemModel::is_initial(const ObjectId& id) const {
    for (const auto& [obj, state] : initial_objects)
        if (obj == id) return true;
    return false;
}

std::optional<ObjectId> SystemModel::creator_of(const ObjectId& id) const {
    for (const auto& [owner, ids] : creatables)
        if (ids.count(id)) return owner;
    return std::nullopt;
}

ObjectState SystemModel::fresh_state(const ClassName& c) const {
    auto it = automata.find(c);
    if (it == automata.end() || it->second.initial_controls.empty())
        throw ModelError("class " + c + " has no automaton with an initial control");
    ObjectState s;
    s.control = it->second.initial_controls.front();
    for (const auto& [name, type] : effective_attributes(c, class_table))
        s.valuation[name] = default_value(type);
    return s;
}

void SystemModel::validate() const {
    auto require = [](bool cond, const std::string& msg) {
        if (!cond) throw ModelError(msg);
    };

    auto check_object = [&](const ObjectId& id) {
        require(!id.name.empty(), "object with an empty name");
        require(id.name != "env", "'env' is reserved for the environment");
        require(class_table.has_class(id.cls),
                "object " + id.name + " has unknown class " + id.cls);
        require(automata.count(id.cls) > 0,
                "class " + id.cls + " of object " + id.name + " has no automaton");
    };

    std::set<std::string> names;
    for (const auto& [id, state] : initial_objects) {
        check_object(id);
        require(names.insert(id.name).second, "duplicate object name " + id.name);

        const Automaton& a = automata.at(id.cls);
        require(a.has_state(state.control),
                "initial control '" + state.control + "' of object " + id.name +
                    " is not a state of its automaton");
        TypeEnv attrs = effective_attributes(id.cls, class_table);
        require(state.valuation.size() == attrs.size(),
                "valuation of object " + id.name +
                    " does not cover exactly the effective attributes");
        for (const auto& [attr, value] : state.valuation) {
            auto it = attrs.find(attr);
            require(it != attrs.end(),
                    "object " + id.name + " binds unknown attribute " + attr);
            require(type_of(value) == it->second,
                    "object " + id.name + " binds attribute " + attr +
                        " with a value of the wrong type");
        }
    }

    // Creatable pools: pairwise disjoint, never containing initial objects.
    for (const auto& [owner, ids] : creatables) {
        require(owner.is_env() || class_table.has_class(owner.cls),
                "creatable owner " + owner.name + " has unknown class");
        for (const auto& id : ids) {
            check_object(id);
            require(!is_initial(id),
                    "initially active object " + id.name + " is listed as creatable");
            require(names.insert(id.name).second,
                    "object " + id.name + " appears in more than one creatable set");
        }
    }

    for (const auto& [cls, a] : automata) {
        require(a.owner_class == cls, "automaton registered under a foreign class");
        require(!a.initial_controls.empty(),
                "automaton of class " + cls + " has no initial control");
        for (const auto& s : a.initial_controls)
            require(a.has_state(s), "initial control " + s + " of class " + cls +
                                        " is not a declared state");
        for (const auto& tr : a.transitions)
            require(a.has_state(tr.source) && a.has_state(tr.target),
                    "transition of class " + cls + " uses an undeclared state");
    }
}

std::shared_ptr<const SystemModel> make_model(SystemModel m) {
    m.validate();
    return std::make_shared<const SystemModel>(std::move(m));
}

bool accepts(const ObjectId& id, const Message& m, const SystemModel& model) {
    if (!model.find_object(id.name))
        throw UnknownObject(id.name);
    if (m.receiver != id) return false;
    Signature sig = effective_signature(id.cls, model.class_table);
    const Method* method = sig.find_method(m.selector);
    if (!method) return false;
    if (method->params.size() != m.args.size()) return false;
    for (std::size_t i = 0; i < m.args.size(); ++i)
        if (type_of(m.args[i]) != method->params[i].type) return false;
    return true;
}

}  // namespace sysmodel
