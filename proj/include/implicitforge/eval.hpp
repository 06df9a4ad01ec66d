#ifndef IMPLICITFORGE_EVAL_HPP
#define IMPLICITFORGE_EVAL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "implicitforge/error.hpp"
#include "implicitforge/expr.hpp"

namespace implicitforge {

/// The undefined value. Every operation that would produce a non-finite result
/// (0/0, x/0, cot(0), sign(0), asin(2), (-8)^0.5, overflow) yields this quiet NaN,
/// and NaN operands propagate.
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

inline bool is_undefined(double v) noexcept { return std::isnan(v); }

/// Point at which an expression is evaluated. Variables that are not supplied are undefined.
struct Coordinates {
    double x = kUndefined;
    double y = kUndefined;
    double z = kUndefined;
    double u = kUndefined;
    double v = kUndefined;

    double operator[](Variable var) const noexcept {
        switch (var) {
            case Variable::x: return x;
            case Variable::y: return y;
            case Variable::z: return z;
            case Variable::u: return u;
            case Variable::v: return v;
        }
        return kUndefined;
    }
};

namespace detail {

inline double defined_or_nan(double r) noexcept { return std::isfinite(r) ? r : kUndefined; }

}  // namespace detail

/// arccot on the principal branch (0, pi).
inline double arccot(double v) noexcept { return std::numbers::pi / 2 - std::atan(v); }

inline double apply(UnaryOp op, double a) noexcept {
    double r = kUndefined;
    switch (op) {
        case UnaryOp::neg: r = -a; break;
        case UnaryOp::abs: r = std::fabs(a); break;
        case UnaryOp::sqrt: r = std::sqrt(a); break;
        case UnaryOp::sin: r = std::sin(a); break;
        case UnaryOp::cos: r = std::cos(a); break;
        case UnaryOp::tan: r = std::tan(a); break;
        case UnaryOp::cot: r = std::cos(a) / std::sin(a); break;
        case UnaryOp::asin: r = std::asin(a); break;
        case UnaryOp::acos: r = std::acos(a); break;
        case UnaryOp::atan: r = std::atan(a); break;
        case UnaryOp::arccot: r = arccot(a); break;
        case UnaryOp::sign: r = a / std::fabs(a); break;
    }
    return detail::defined_or_nan(r);
}

inline double apply(BinaryOp op, double a, double b) noexcept {
    double r = kUndefined;
    switch (op) {
        case BinaryOp::add: r = a + b; break;
        case BinaryOp::sub: r = a - b; break;
        case BinaryOp::mul: r = a * b; break;
        case BinaryOp::div: r = a / b; break;
        case BinaryOp::pow:
            // std::pow(NaN, 0) and std::pow(1, NaN) are 1; undefined must still propagate.
            if (std::isnan(a) || std::isnan(b)) return kUndefined;
            r = std::pow(a, b);
            break;
    }
    return detail::defined_or_nan(r);
}

/// Expression lowered to a postfix program with parameters folded to constants.
/// Compile once, evaluate at many points; `eval` is const and thread-safe as long
/// as each thread passes its own scratch stack.
class CompiledExpr {
public:
    CompiledExpr(const Expr& e, const ParamSet& params) {
        std::size_t depth = 0;
        lower(e, params, depth);
    }

    double eval(const Coordinates& at, std::vector<double>& stack) const {
        stack.resize(max_depth_);
        double* top = stack.data();  // one past the last pushed value
        for (const Instr& in : code_) {
            switch (in.kind) {
                case Instr::Kind::push_const: *top++ = in.value; break;
                case Instr::Kind::push_var: *top++ = at[in.var]; break;
                case Instr::Kind::unary: top[-1] = apply(in.unary, top[-1]); break;
                case Instr::Kind::binary:
                    --top;
                    top[-1] = apply(in.binary, top[-1], top[0]);
                    break;
            }
        }
        return stack[0];
    }

    double eval(const Coordinates& at) const {
        std::vector<double> stack;
        return eval(at, stack);
    }

    std::size_t size() const noexcept { return code_.size(); }

private:
    struct Instr {
        enum class Kind : std::uint8_t { push_const, push_var, unary, binary };
        Kind kind;
        Variable var = Variable::x;
        UnaryOp unary = UnaryOp::neg;
        BinaryOp binary = BinaryOp::add;
        double value = 0.0;
    };

    void push(std::size_t& depth) {
        ++depth;
        if (depth > max_depth_) max_depth_ = depth;
    }

    void lower(const Expr& e, const ParamSet& params, std::size_t& depth) {
        switch (e.kind()) {
            case Expr::Kind::constant:
                code_.push_back({Instr::Kind::push_const, Variable::x, UnaryOp::neg, BinaryOp::add, e.value()});
                push(depth);
                break;
            case Expr::Kind::variable:
                code_.push_back({Instr::Kind::push_var, e.var()});
                push(depth);
                break;
            case Expr::Kind::parameter: {
                auto value = params.get(e.name());
                if (!value) throw UnboundParameter(e.name());
                code_.push_back({Instr::Kind::push_const, Variable::x, UnaryOp::neg, BinaryOp::add, *value});
                push(depth);
                break;
            }
            case Expr::Kind::unary:
                lower(e.child(), params, depth);
                code_.push_back({Instr::Kind::unary, Variable::x, e.unary_op()});
                break;
            case Expr::Kind::binary:
                lower(e.lhs(), params, depth);
                lower(e.rhs(), params, depth);
                code_.push_back({Instr::Kind::binary, Variable::x, UnaryOp::neg, e.binary_op()});
                --depth;
                break;
        }
    }

    std::vector<Instr> code_;
    std::size_t max_depth_ = 0;
};

inline double evaluate(const Expr& e, const Coordinates& at, const ParamSet& params = {}) {
    return CompiledExpr(e, params).eval(at);
}

inline double evaluate(const Expr& e, double x, double y, double z, const ParamSet& params = {}) {
    Coordinates at;
    at.x = x;
    at.y = y;
    at.z = z;
    return evaluate(e, at, params);
}

}  // namespace implicitforge

#endif
