#ifndef IMPLICITFORGE_EXPR_HPP
#define IMPLICITFORGE_EXPR_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "implicitforge/error.hpp"

namespace implicitforge {

enum class Variable : std::uint8_t { x, y, z, u, v };

enum class UnaryOp : std::uint8_t { neg, abs, sqrt, sin, cos, tan, cot, asin, acos, atan, arccot, sign };

enum class BinaryOp : std::uint8_t { add, sub, mul, div, pow };

inline constexpr std::string_view variable_name(Variable v) {
    constexpr std::string_view names[] = {"x", "y", "z", "u", "v"};
    return names[static_cast<int>(v)];
}

inline std::optional<Variable> variable_from_name(std::string_view name) {
    if (name == "x") return Variable::x;
    if (name == "y") return Variable::y;
    if (name == "z") return Variable::z;
    if (name == "u") return Variable::u;
    if (name == "v") return Variable::v;
    return std::nullopt;
}

/// DSL spelling of a unary function. `neg` has no function spelling and maps to "-".
inline constexpr std::string_view unary_name(UnaryOp op) {
    constexpr std::string_view names[] = {"-",   "abs",  "sqrt", "sin",  "cos",    "tan",
                                          "cot", "asin", "acos", "atan", "arccot", "sign"};
    return names[static_cast<int>(op)];
}

inline std::optional<UnaryOp> function_from_name(std::string_view name) {
    for (int i = 1; i <= static_cast<int>(UnaryOp::sign); ++i) {
        auto op = static_cast<UnaryOp>(i);
        if (unary_name(op) == name) return op;
    }
    return std::nullopt;
}

inline constexpr char binary_symbol(BinaryOp op) {
    constexpr char symbols[] = {'+', '-', '*', '/', '^'};
    return symbols[static_cast<int>(op)];
}

inline bool is_reserved_name(std::string_view name) {
    return variable_from_name(name).has_value() || function_from_name(name).has_value();
}

inline bool is_identifier(std::string_view name) {
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (name.empty() || !alpha(name.front())) return false;
    for (char c : name.substr(1))
        if (!alpha(c) && !digit(c) && c != '_') return false;
    return true;
}

/// Immutable expression tree. Copies share structure; nodes are never mutated after construction.
class Expr {
public:
    enum class Kind : std::uint8_t { constant, variable, parameter, unary, binary };

    static Expr constant(double value) {
        if (!std::isfinite(value)) throw InvalidArgument("expression constants must be finite");
        auto n = std::make_shared<Node>();
        n->kind = Kind::constant;
        n->value = value;
        return Expr(std::move(n));
    }

    static Expr variable(Variable v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::variable;
        n->var = v;
        return Expr(std::move(n));
    }

    static Expr parameter(std::string name) {
        if (!is_identifier(name) || is_reserved_name(name))
            throw InvalidArgument("invalid parameter name '" + name + "'");
        auto n = std::make_shared<Node>();
        n->kind = Kind::parameter;
        n->name = std::move(name);
        return Expr(std::move(n));
    }

    static Expr unary(UnaryOp op, Expr child) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::unary;
        n->unary = op;
        n->lhs = std::move(child.node_);
        return Expr(std::move(n));
    }

    static Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::binary;
        n->binary = op;
        n->lhs = std::move(lhs.node_);
        n->rhs = std::move(rhs.node_);
        return Expr(std::move(n));
    }

    Kind kind() const noexcept { return node_->kind; }
    double value() const noexcept { return node_->value; }
    Variable var() const noexcept { return node_->var; }
    const std::string& name() const noexcept { return node_->name; }
    UnaryOp unary_op() const noexcept { return node_->unary; }
    BinaryOp binary_op() const noexcept { return node_->binary; }

    /// Operand of a unary node, or left operand of a binary node.
    Expr child() const { return Expr(node_->lhs); }
    Expr lhs() const { return Expr(node_->lhs); }
    Expr rhs() const { return Expr(node_->rhs); }

    /// Structural equality. Constants compare by bit pattern so 0 and -0 differ.
    friend bool operator==(const Expr& a, const Expr& b) { return same(a.node_.get(), b.node_.get()); }

    std::size_t node_count() const { return count(node_.get()); }
    std::size_t depth() const { return depth_of(node_.get()); }

private:
    struct Node {
        Kind kind = Kind::constant;
        double value = 0.0;
        Variable var = Variable::x;
        UnaryOp unary = UnaryOp::neg;
        BinaryOp binary = BinaryOp::add;
        std::string name;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static bool same(const Node* a, const Node* b) {
        if (a == b) return true;
        if (a->kind != b->kind) return false;
        switch (a->kind) {
            case Kind::constant:
                return std::bit_cast<std::uint64_t>(a->value) == std::bit_cast<std::uint64_t>(b->value);
            case Kind::variable: return a->var == b->var;
            case Kind::parameter: return a->name == b->name;
            case Kind::unary: return a->unary == b->unary && same(a->lhs.get(), b->lhs.get());
            case Kind::binary:
                return a->binary == b->binary && same(a->lhs.get(), b->lhs.get()) &&
                       same(a->rhs.get(), b->rhs.get());
        }
        return false;
    }

    static std::size_t count(const Node* n) {
        if (!n) return 0;
        return 1 + count(n->lhs.get()) + count(n->rhs.get());
    }

    static std::size_t depth_of(const Node* n) {
        if (!n) return 0;
        auto l = depth_of(n->lhs.get());
        auto r = depth_of(n->rhs.get());
        return 1 + (l > r ? l : r);
    }

    std::shared_ptr<const Node> node_;
};

/// Parameter bindings. Each name is bound at most once and every value is finite.
class ParamSet {
public:
    ParamSet() = default;
    ParamSet(std::initializer_list<std::pair<const std::string, double>> init) {
        for (const auto& [k, v] : init) set(k, v);
    }

    void set(const std::string& name, double value) {
        if (!is_identifier(name) || is_reserved_name(name))
            throw InvalidArgument("invalid parameter name '" + name + "'");
        if (!std::isfinite(value)) throw InvalidArgument("parameter '" + name + "' must be finite");
        values_[name] = value;
    }

    std::optional<double> get(const std::string& name) const {
        auto it = values_.find(name);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const std::string& name) const { return values_.count(name) != 0; }
    bool empty() const noexcept { return values_.empty(); }
    std::size_t size() const noexcept { return values_.size(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    friend bool operator==(const ParamSet&, const ParamSet&) = default;

private:
    std::map<std::string, double> values_;
};

struct FreeNames {
    std::set<Variable> variables;
    std::set<std::string> params;
};

namespace detail {
inline void collect_names(const Expr& e, FreeNames& out) {
    switch (e.kind()) {
        case Expr::Kind::constant: break;
        case Expr::Kind::variable: out.variables.insert(e.var()); break;
        case Expr::Kind::parameter: out.params.insert(e.name()); break;
        case Expr::Kind::unary: collect_names(e.child(), out); break;
        case Expr::Kind::binary:
            collect_names(e.lhs(), out);
            collect_names(e.rhs(), out);
            break;
    }
}
}  // namespace detail

inline FreeNames free_names(const Expr& e) {
    FreeNames out;
    detail::collect_names(e, out);
    return out;
}

/// Replace every bound parameter by its expression. Unbound parameters are left as-is.
inline Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
    switch (e.kind()) {
        case Expr::Kind::constant:
        case Expr::Kind::variable: return e;
        case Expr::Kind::parameter: {
            auto it = bindings.find(e.name());
            return it == bindings.end() ? e : it->second;
        }
        case Expr::Kind::unary: return Expr::unary(e.unary_op(), substitute(e.child(), bindings));
        case Expr::Kind::binary:
            return Expr::binary(e.binary_op(), substitute(e.lhs(), bindings), substitute(e.rhs(), bindings));
    }
    return e;
}

/// Freeze numeric parameter values into constants.
inline Expr bind_constants(const Expr& e, const ParamSet& params) {
    std::map<std::string, Expr> bindings;
    for (const auto& [k, v] : params) bindings.emplace(k, Expr::constant(v));
    return substitute(e, bindings);
}

// Builder helpers. Operators are found by ADL on Expr.
inline Expr operator+(Expr a, Expr b) { return Expr::binary(BinaryOp::add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(BinaryOp::sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(BinaryOp::mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(BinaryOp::div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::unary(UnaryOp::neg, std::move(a)); }
inline Expr operator+(Expr a, double b) { return std::move(a) + Expr::constant(b); }
inline Expr operator+(double a, Expr b) { return Expr::constant(a) + std::move(b); }
inline Expr operator-(Expr a, double b) { return std::move(a) - Expr::constant(b); }
inline Expr operator-(double a, Expr b) { return Expr::constant(a) - std::move(b); }
inline Expr operator*(Expr a, double b) { return std::move(a) * Expr::constant(b); }
inline Expr operator*(double a, Expr b) { return Expr::constant(a) * std::move(b); }
inline Expr operator/(Expr a, double b) { return std::move(a) / Expr::constant(b); }
inline Expr operator/(double a, Expr b) { return Expr::constant(a) / std::move(b); }

namespace fn {
inline Expr x() { return Expr::variable(Variable::x); }
inline Expr y() { return Expr::variable(Variable::y); }
inline Expr z() { return Expr::variable(Variable::z); }
inline Expr u() { return Expr::variable(Variable::u); }
inline Expr v() { return Expr::variable(Variable::v); }
inline Expr c(double value) { return Expr::constant(value); }
inline Expr param(std::string name) { return Expr::parameter(std::move(name)); }
inline Expr pow(Expr a, Expr b) { return Expr::binary(BinaryOp::pow, std::move(a), std::move(b)); }
inline Expr pow(Expr a, double b) { return pow(std::move(a), Expr::constant(b)); }
inline Expr abs(Expr a) { return Expr::unary(UnaryOp::abs, std::move(a)); }
inline Expr sqrt(Expr a) { return Expr::unary(UnaryOp::sqrt, std::move(a)); }
inline Expr sin(Expr a) { return Expr::unary(UnaryOp::sin, std::move(a)); }
inline Expr cos(Expr a) { return Expr::unary(UnaryOp::cos, std::move(a)); }
inline Expr tan(Expr a) { return Expr::unary(UnaryOp::tan, std::move(a)); }
inline Expr cot(Expr a) { return Expr::unary(UnaryOp::cot, std::move(a)); }
inline Expr asin(Expr a) { return Expr::unary(UnaryOp::asin, std::move(a)); }
inline Expr acos(Expr a) { return Expr::unary(UnaryOp::acos, std::move(a)); }
inline Expr atan(Expr a) { return Expr::unary(UnaryOp::atan, std::move(a)); }
inline Expr arccot(Expr a) { return Expr::unary(UnaryOp::arccot, std::move(a)); }
inline Expr sign(Expr a) { return Expr::unary(UnaryOp::sign, std::move(a)); }
}  // namespace fn

}  // namespace implicitforge

#endif
