#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sysmodel/core/span.hpp"
#include "sysmodel/core/value.hpp"

namespace sysmodel {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct Literal {
    Value value;
};

/// Reference to an attribute or a transition parameter.
struct VarRef {
    std::string name;
};

struct Unary {
    UnaryOp op;
    ExprPtr operand;
};

struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

/// Immutable expression tree; share freely across threads.
struct Expr {
    std::variant<Literal, VarRef, Unary, Binary> node;
    Span span;
};

ExprPtr make_literal(Value v, Span span = {});
ExprPtr make_var(std::string name, Span span = {});
ExprPtr make_unary(UnaryOp op, ExprPtr operand, Span span = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, Span span = {});

/// Structural equality, spans ignored.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Canonical text with minimal parentheses; reparses to an equal tree.
std::string print_expr(const ExprPtr& e);

using TypeEnv = std::map<std::string, ValueType>;
using Valuation = std::map<std::string, Value>;

/// Static type of the expression under `env`, or nullopt with a message in
/// `error` when it does not type-check.
std::optional<ValueType> type_check(const ExprPtr& e, const TypeEnv& env,
                                    std::string* error = nullptr);

/// Evaluates under a ground valuation. Throws EvaluationError for unknown
/// variables, operand type mismatches and division by zero.
Value eval(const ExprPtr& e, const Valuation& vars);

std::set<std::string> free_vars(const ExprPtr& e);

std::string op_token(BinaryOp op);

}  // namespace sysmodel
