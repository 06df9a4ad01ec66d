#ifndef IMPLICITFORGE_TESTS_NAIVE_EVAL_HPP
#define IMPLICITFORGE_TESTS_NAIVE_EVAL_HPP

// Reference interpreter used as an oracle for the compiled evaluator. It walks the
// tree recursively and spells out each undefined case explicitly instead of relying
// on a single non-finite check.

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "implicitforge/expr.hpp"

namespace oracle {

using implicitforge::BinaryOp;
using implicitforge::Expr;
using implicitforge::UnaryOp;
using implicitforge::Variable;

using Value = std::optional<double>;  // nullopt = undefined

inline Value finite_or_undefined(double r) {
    if (std::isnan(r) || std::isinf(r)) return std::nullopt;
    return r;
}

inline Value unary(UnaryOp op, double a) {
    constexpr double half_pi = 1.57079632679489661923;
    switch (op) {
        case UnaryOp::neg: return -a;
        case UnaryOp::abs: return a < 0 ? -a : a;
        case UnaryOp::sqrt:
            if (a < 0) return std::nullopt;
            return std::sqrt(a);
        case UnaryOp::sin: return std::sin(a);
        case UnaryOp::cos: return std::cos(a);
        case UnaryOp::tan: return finite_or_undefined(std::tan(a));
        case UnaryOp::cot: {
            double s = std::sin(a);
            if (s == 0) return std::nullopt;
            return finite_or_undefined(std::cos(a) / s);
        }
        case UnaryOp::asin:
            if (a < -1 || a > 1) return std::nullopt;
            return std::asin(a);
        case UnaryOp::acos:
            if (a < -1 || a > 1) return std::nullopt;
            return std::acos(a);
        case UnaryOp::atan: return std::atan(a);
        case UnaryOp::arccot: return half_pi - std::atan(a);
        case UnaryOp::sign:
            if (a == 0) return std::nullopt;
            return a > 0 ? 1.0 : -1.0;
    }
    return std::nullopt;
}

inline Value binary(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::add: return finite_or_undefined(a + b);
        case BinaryOp::sub: return finite_or_undefined(a - b);
        case BinaryOp::mul: return finite_or_undefined(a * b);
        case BinaryOp::div:
            if (b == 0) return std::nullopt;
            return finite_or_undefined(a / b);
        case BinaryOp::pow:
            if (a < 0 && std::floor(b) != b) return std::nullopt;
            if (a == 0 && b < 0) return std::nullopt;
            return finite_or_undefined(std::pow(a, b));
    }
    return std::nullopt;
}

struct Point {
    double x, y, z, u, v;
};

inline Value eval(const Expr& e, const Point& p, const std::map<std::string, double>& params) {
    switch (e.kind()) {
        case Expr::Kind::constant: return e.value();
        case Expr::Kind::variable:
            switch (e.var()) {
                case Variable::x: return p.x;
                case Variable::y: return p.y;
                case Variable::z: return p.z;
                case Variable::u: return p.u;
                case Variable::v: return p.v;
            }
            return std::nullopt;
        case Expr::Kind::parameter: return params.at(e.name());
        case Expr::Kind::unary: {
            Value a = eval(e.child(), p, params);
            if (!a) return std::nullopt;
            return unary(e.unary_op(), *a);
        }
        case Expr::Kind::binary: {
            Value a = eval(e.lhs(), p, params);
            Value b = eval(e.rhs(), p, params);
            if (!a || !b) return std::nullopt;
            return binary(e.binary_op(), *a, *b);
        }
    }
    return std::nullopt;
}

}  // namespace oracle

#endif
