#include "sysmodel/core/expr.hpp"

#include <functional>

#include "sysmodel/core/errors.hpp"

namespace sysmodel {

ExprPtr make_literal(Value v, Span span) {
    return std::make_shared<Expr>(Expr{Literal{std::move(v)}, span});
}
ExprPtr make_var(std::string name, Span span) {
    return std::make_shared<Expr>(Expr{VarRef{std::move(name)}, span});
}
ExprPtr make_unary(UnaryOp op, ExprPtr operand, Span span) {
    return std::make_shared<Expr>(Expr{Unary{op, std::move(operand)}, span});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, Span span) {
    return std::make_shared<Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, span});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    switch (a->node.index()) {
        case 0:
            return std::get<Literal>(a->node).value == std::get<Literal>(b->node).value;
        case 1:
            return std::get<VarRef>(a->node).name == std::get<VarRef>(b->node).name;
        case 2: {
            const auto& ua = std::get<Unary>(a->node);
            const auto& ub = std::get<Unary>(b->node);
            return ua.op == ub.op && expr_equal(ua.operand, ub.operand);
        }
        default: {
            const auto& ba = std::get<Binary>(a->node);
            const auto& bb = std::get<Binary>(b->node);
            return ba.op == bb.op && expr_equal(ba.lhs, bb.lhs) &&
                   expr_equal(ba.rhs, bb.rhs);
        }
    }
}

std::string op_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "div";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
    }
    return "?";
}

namespace {

// Precedence levels, loosest first: or=1 and=2 not=3 cmp=4 add=5 mul=6 neg=7.
int prec_of(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 4;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        default: return 6;
    }
}

int prec_of(const Expr& e) {
    switch (e.node.index()) {
        case 0:
        case 1: return 8;
        case 2: return std::get<Unary>(e.node).op == UnaryOp::Not ? 3 : 7;
        default: return prec_of(std::get<Binary>(e.node).op);
    }
}

void print_rec(const ExprPtr& e, int min_prec, std::string& out) {
    const int p = prec_of(*e);
    const bool parens = p < min_prec;
    if (parens) out += '(';
    switch (e->node.index()) {
        case 0:
            out += render_value(std::get<Literal>(e->node).value);
            break;
        case 1:
            out += std::get<VarRef>(e->node).name;
            break;
        case 2: {
            const auto& u = std::get<Unary>(e->node);
            if (u.op == UnaryOp::Not) {
                out += "not ";
                print_rec(u.operand, 3, out);
            } else {
                out += '-';
                print_rec(u.operand, 7, out);
            }
            break;
        }
        default: {
            const auto& b = std::get<Binary>(e->node);
            // Comparisons are non-associative; arithmetic and the logical
            // connectives associate to the left.
            const int lhs_min = (p == 4) ? 5 : p;
            const int rhs_min = (p == 4) ? 5 : p + 1;
            print_rec(b.lhs, lhs_min, out);
            out += ' ';
            out += op_token(b.op);
            out += ' ';
            print_rec(b.rhs, rhs_min, out);
            break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

std::optional<ValueType> type_check(const ExprPtr& e, const TypeEnv& env,
                                    std::string* error) {
    auto fail = [&](const std::string& msg) -> std::optional<ValueType> {
        if (error) *error = msg;
        return std::nullopt;
    };
    switch (e->node.index()) {
        case 0:
            return type_of(std::get<Literal>(e->node).value);
        case 1: {
            const auto& name = std::get<VarRef>(e->node).name;
            auto it = env.find(name);
            if (it == env.end()) return fail("unknown variable '" + name + "'");
            return it->second;
        }
        case 2: {
            const auto& u = std::get<Unary>(e->node);
            auto t = type_check(u.operand, env, error);
            if (!t) return std::nullopt;
            if (u.op == UnaryOp::Not) {
                if (*t != ValueType::Bool) return fail("'not' needs a Bool operand");
                return ValueType::Bool;
            }
            if (*t != ValueType::Int) return fail("'-' needs an Int operand");
            return ValueType::Int;
        }
        default: {
            const auto& b = std::get<Binary>(e->node);
            auto lt = type_check(b.lhs, env, error);
            auto rt = type_check(b.rhs, env, error);
            if (!lt || !rt) return std::nullopt;
            switch (b.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub:
                case BinaryOp::Mul:
                case BinaryOp::Div:
                    if (*lt != ValueType::Int || *rt != ValueType::Int)
                        return fail("arithmetic needs Int operands");
                    return ValueType::Int;
                case BinaryOp::Lt:
                case BinaryOp::Le:
                case BinaryOp::Gt:
                case BinaryOp::Ge:
                    if (*lt != ValueType::Int || *rt != ValueType::Int)
                        return fail("ordering comparisons need Int operands");
                    return ValueType::Bool;
                case BinaryOp::Eq:
                case BinaryOp::Ne:
                    if (*lt != *rt)
                        return fail("'" + op_token(b.op) + "' needs operands of one type");
                    return ValueType::Bool;
                case BinaryOp::And:
                case BinaryOp::Or:
                    if (*lt != ValueType::Bool || *rt != ValueType::Bool)
                        return fail("logical connectives need Bool operands");
                    return ValueType::Bool;
            }
            return std::nullopt;
        }
    }
}

namespace {

std::int64_t as_int(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw EvaluationError("expected an Int value, got " + render_value(v));
}

bool as_bool(const Value& v) {
    if (auto* b = std::get_if<bool>(&v)) return *b;
    throw EvaluationError("expected a Bool value, got " + render_value(v));
}

// Wrap-around arithmetic via unsigned math; overflow is defined, not UB.
std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                     static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                     static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                     static_cast<std::uint64_t>(b));
}

}  // namespace

Value eval(const ExprPtr& e, const Valuation& vars) {
    switch (e->node.index()) {
        case 0:
            return std::get<Literal>(e->node).value;
        case 1: {
            const auto& name = std::get<VarRef>(e->node).name;
            auto it = vars.find(name);
            if (it == vars.end())
                throw EvaluationError("unknown variable '" + name + "'");
            return it->second;
        }
        case 2: {
            const auto& u = std::get<Unary>(e->node);
            Value v = eval(u.operand, vars);
            if (u.op == UnaryOp::Not) return !as_bool(v);
            return wrap_sub(0, as_int(v));
        }
        default: {
            const auto& b = std::get<Binary>(e->node);
            // Logical connectives short-circuit.
            if (b.op == BinaryOp::And) {
                if (!as_bool(eval(b.lhs, vars))) return false;
                return as_bool(eval(b.rhs, vars));
            }
            if (b.op == BinaryOp::Or) {
                if (as_bool(eval(b.lhs, vars))) return true;
                return as_bool(eval(b.rhs, vars));
            }
            Value lv = eval(b.lhs, vars);
            Value rv = eval(b.rhs, vars);
            switch (b.op) {
                case BinaryOp::Add: return wrap_add(as_int(lv), as_int(rv));
                case BinaryOp::Sub: return wrap_sub(as_int(lv), as_int(rv));
                case BinaryOp::Mul: return wrap_mul(as_int(lv), as_int(rv));
                case BinaryOp::Div: {
                    std::int64_t d = as_int(rv);
                    if (d == 0) throw EvaluationError("division by zero");
                    std::int64_t n = as_int(lv);
                    // INT64_MIN div -1 overflows; wrap like the other ops.
                    if (d == -1) return wrap_sub(0, n);
                    return n / d;
                }
                case BinaryOp::Lt: return as_int(lv) < as_int(rv);
                case BinaryOp::Le: return as_int(lv) <= as_int(rv);
                case BinaryOp::Gt: return as_int(lv) > as_int(rv);
                case BinaryOp::Ge: return as_int(lv) >= as_int(rv);
                case BinaryOp::Eq:
                case BinaryOp::Ne: {
                    if (lv.index() != rv.index())
                        throw EvaluationError("'" + op_token(b.op) +
                                              "' on values of different types");
                    bool eq = lv == rv;
                    return b.op == BinaryOp::Eq ? eq : !eq;
                }
                default: break;
            }
            throw EvaluationError("unreachable operator");
        }
    }
}

std::set<std::string> free_vars(const ExprPtr& e) {
    std::set<std::string> out;
    std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& x) {
        switch (x->node.index()) {
            case 1: out.insert(std::get<VarRef>(x->node).name); break;
            case 2: walk(std::get<Unary>(x->node).operand); break;
            case 3:
                walk(std::get<Binary>(x->node).lhs);
                walk(std::get<Binary>(x->node).rhs);
                break;
            default: break;
        }
    };
    walk(e);
    return out;
}

}  // namespace sysmodel
