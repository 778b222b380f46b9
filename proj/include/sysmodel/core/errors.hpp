#pragma once

#include <stdexcept>
#include <string>

namespace sysmodel {

// Base class for all kernel errors; callers that just want "anything went
// wrong" catch this.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownClass : Error {
    explicit UnknownClass(const std::string& name)
        : Error("unknown class: " + name), class_name(name) {}
    std::string class_name;
};

struct UnknownObject : Error {
    explicit UnknownObject(const std::string& name)
        : Error("unknown object: " + name), object_name(name) {}
    std::string object_name;
};

struct ConflictingInheritedMember : Error {
    ConflictingInheritedMember(const std::string& cls, const std::string& member)
        : Error("class " + cls + " redeclares inherited member '" + member +
                "' with a different type"),
          class_name(cls), member_name(member) {}
    std::string class_name;
    std::string member_name;
};

struct EvaluationError : Error {
    explicit EvaluationError(const std::string& what) : Error(what) {}
};

struct ExplosionLimit : Error {
    explicit ExplosionLimit(std::size_t cap)
        : Error("enumeration exceeded the configured cap of " + std::to_string(cap) +
                " nodes"),
          cap(cap) {}
    std::size_t cap;
};

// SystemModel construction rejects invalid models outright instead of
// repairing them.
struct ModelError : Error {
    explicit ModelError(const std::string& what) : Error(what) {}
};

struct InvalidStimulus : Error {
    explicit InvalidStimulus(const std::string& what) : Error(what) {}
};

struct CreationViolation : Error {
    explicit CreationViolation(const std::string& what) : Error(what) {}
};

}  // namespace sysmodel
