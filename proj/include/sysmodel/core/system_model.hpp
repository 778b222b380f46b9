#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sysmodel/core/automaton.hpp"
#include "sysmodel/core/class_table.hpp"
#include "sysmodel/core/message.hpp"

namespace sysmodel {

/// The elaborated semantic universe: class table, one automaton per class,
/// the initially live objects and the identifier pools each object may
/// bring to life.
struct SystemModel {
    ClassTable class_table;
    std::map<ClassName, Automaton> automata;
    std::vector<std::pair<ObjectId, ObjectState>> initial_objects;
    std::map<ObjectId, std::set<ObjectId>> creatables;

    /// Class of a known object name (initial or creatable), if any.
    std::optional<ClassName> class_of(const std::string& name) const;

    /// Full ObjectId for a known object name.
    std::optional<ObjectId> find_object(const std::string& name) const;

    bool is_initial(const ObjectId& id) const;

    /// Owner allowed to create `id`, if any.
    std::optional<ObjectId> creator_of(const ObjectId& id) const;

    /// First declared initial control with default attribute values; the
    /// state objects of this class are created in.
    ObjectState fresh_state(const ClassName& c) const;

    /// Throws ModelError unless every invariant holds: object names unique
    /// and not `env`, classes known, automata present, creatables pairwise
    /// disjoint and excluding initial objects, initial states well-formed.
    void validate() const;
};

/// Validating constructor; returns a shared immutable model.
std::shared_ptr<const SystemModel> make_model(SystemModel m);

/// True iff m is addressed to id and m's selector, arity and argument
/// types belong to the effective signature of id's class. Throws
/// UnknownObject for ids outside the model (including env).
bool accepts(const ObjectId& id, const Message& m, const SystemModel& model);

}  // namespace sysmodel
