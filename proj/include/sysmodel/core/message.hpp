#pragma once

#include <compare>
#include <string>
#include <vector>

#include "sysmodel/core/value.hpp"

namespace sysmodel {

using ClassName = std::string;

/// Object identifier: a globally unique name plus the class the object
/// belongs to. The environment pseudo-object `env` has no class.
struct ObjectId {
    std::string name;
    ClassName cls;

    static ObjectId env() { return {"env", ""}; }
    bool is_env() const { return name == "env"; }

    auto operator<=>(const ObjectId&) const = default;
};

enum class MsgTag { Call, Ret };

struct Message {
    ObjectId sender;
    ObjectId receiver;
    std::string selector;
    std::vector<Value> args;
    MsgTag tag = MsgTag::Call;

    auto operator<=>(const Message&) const = default;
};

/// Canonical rendering: `call:env->acc.deposit(5)`.
std::string render_message(const Message& m);

}  // namespace sysmodel
