#ifndef IMPLICITFORGE_CONSTITUENTS_HPP
#define IMPLICITFORGE_CONSTITUENTS_HPP

// Constituent functions: pulse trains, staircases, piecewise-linear concatenation and
// power sums, each emitted as an expression tree.
//
// Naming. The shapes are named by what they look like; the historical labels are
//   sawtooth     sum form "f_st1", trig form "f_sr2"
//   triangular   sum form "f_tr1", acos form "f_tr2", arccot form "f_tr3"
//   staircase    sum form "f_sc1", trig form "f_st2"
//   rectangular  "f_rec1" (sign), "f_rec2" (arccot), "f_rec3" (ratio)
//
// Sum forms are built from the gate term 1 - (x-a)(x-b)/(|x-a||x-b|), which is 2
// strictly inside (a, b), 0 outside and undefined at a and b. They are valid on the
// window [-(p+1)r, pr]; outside it the finite sum is returned unchanged.
//
// Trig forms rely on arccot having range (0, pi), so that arccot(cot(pi*x/r))/pi is
// the fractional part of x/r.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "implicitforge/error.hpp"
#include "implicitforge/expr.hpp"

namespace implicitforge {

enum class SawtoothForm { sum, trig };
enum class TriangularForm { sum, acos, arccot };
enum class StaircaseForm { sum, trig };
enum class RectangularForm { sign, arccot, ratio };

struct Point2 {
    double x;
    double y;
};

/// One term a * x^b * y^c * z^d. With `abs_base` the bases are |x|, |y|, |z|.
struct PowerTerm {
    double coeff = 1.0;
    double ex = 0.0;
    double ey = 0.0;
    double ez = 0.0;
    bool abs_base = false;

    friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

namespace detail {

inline void require_pulse(double r, int p) {
    if (!(std::isfinite(r) && r > 0)) throw InvalidArgument("pulse base r must be a positive finite number");
    if (p < 1) throw InvalidArgument("pulse half window count p must be at least 1");
}

inline bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

inline Expr shifted(const Expr& arg, double a) { return arg - Expr::constant(a); }

/// (x-a)(x-b) / (|x-a||x-b|): -1 inside (a, b), +1 outside, undefined at a and b.
inline Expr side(const Expr& arg, double a, double b) {
    return (shifted(arg, a) * shifted(arg, b)) / (fn::abs(shifted(arg, a)) * fn::abs(shifted(arg, b)));
}

inline Expr gate(const Expr& arg, double a, double b) { return Expr::constant(1.0) - side(arg, a, b); }

inline Expr sum_of(std::vector<Expr> terms) {
    if (terms.empty()) return Expr::constant(0.0);
    Expr acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) acc = acc + terms[i];
    return acc;
}

/// Sum over i = -p..p of gate(r(i-1), ri) * (x - r(i-1)), optionally scaled per term.
inline Expr ramp_sum(const Expr& arg, double r, int p, double term_scale = 1.0) {
    std::vector<Expr> terms;
    for (int i = -p; i <= p; ++i) {
        double a = r * (i - 1);
        double b = r * i;
        Expr term = gate(arg, a, b) * shifted(arg, a);
        terms.push_back(term_scale == 1.0 ? term : Expr::constant(term_scale) * term);
    }
    return sum_of(std::move(terms));
}

/// (1/pi) * arccot(cot(pi * arg / r)), the fractional part of arg / r.
inline Expr frac_trig(const Expr& arg, double r) {
    constexpr double pi = std::numbers::pi;
    return Expr::constant(1.0 / pi) * fn::arccot(fn::cot(Expr::constant(pi) * arg / Expr::constant(r)));
}

}  // namespace detail

/// Concatenation of straight segments through the given knots. Undefined at the knots.
inline Expr piecewise_linear(std::span<const Point2> knots, const Expr& arg = fn::x()) {
    if (knots.size() < 2) throw InvalidArgument("piecewise_linear needs at least two points");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i].x < knots[i + 1].x)) throw InvalidArgument("piecewise_linear knots must be strictly increasing");
    }
    for (const auto& k : knots)
        if (!std::isfinite(k.x) || !std::isfinite(k.y)) throw InvalidArgument("piecewise_linear knots must be finite");

    std::vector<Expr> terms;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const Point2& a = knots[i];
        const Point2& b = knots[i + 1];
        Expr chord = (Expr::constant(b.y - a.y) * arg + Expr::constant(a.y * b.x - b.y * a.x)) /
                     Expr::constant(b.x - a.x);
        terms.push_back(detail::gate(arg, a.x, b.x) * chord);
    }
    return Expr::constant(0.5) * detail::sum_of(std::move(terms));
}

inline Expr piecewise_linear(std::initializer_list<Point2> knots, const Expr& arg = fn::x()) {
    return piecewise_linear(std::span<const Point2>(knots.begin(), knots.size()), arg);
}

/// The eight-segment example curve, encoded term for term as printed (including the
/// ungated "6 - side(7,9)" and "-5 side(10,10.5)" terms of its second half).
inline Expr figure_curve(const Expr& arg = fn::x()) {
    using detail::gate;
    using detail::side;
    const Expr& x = arg;
    Expr first = gate(x, 1, 2) * (x - 1.0) + gate(x, 2, 3) * (2.0 * x - 3.0) + gate(x, 3, 4) * (3.0 * x - 6.0) +
                 gate(x, 4, 5) * (-4.0 * x + 22.0);
    Expr second = gate(x, 5, 7) * (0.5 * x + 4.5) + 6.0 - side(x, 7, 9) + gate(x, 9, 10) * (-x + 10.0) -
                  5.0 * side(x, 10, 10.5);
    return 0.5 * (first + second);
}

/// Ramp 0 -> 1 with period r, undefined at multiples of r.
inline Expr sawtooth(SawtoothForm form, double r, int p = 1, const Expr& arg = fn::x()) {
    detail::require_pulse(r, p);
    if (form == SawtoothForm::sum) return Expr::constant(1.0 / (2.0 * r)) * detail::ramp_sum(arg, r, p);
    return detail::frac_trig(arg, r);
}

/// Triangle pulses of base r. The sum and arccot forms run 1 -> 0 -> 1 over a period;
/// the acos form runs 0 -> 1 -> 0 (shifted by r/2).
inline Expr triangular(TriangularForm form, double r, int p = 1, const Expr& arg = fn::x()) {
    detail::require_pulse(r, p);
    constexpr double pi = std::numbers::pi;
    switch (form) {
        case TriangularForm::sum: return fn::abs(detail::ramp_sum(arg, r, p, 1.0 / r) - 1.0);
        case TriangularForm::acos:
            return Expr::constant(1.0 / pi) * fn::acos(fn::cos(Expr::constant(2.0 * pi) * arg / Expr::constant(r)));
        case TriangularForm::arccot:
            return fn::abs(Expr::constant(2.0 / pi) *
                               fn::arccot(fn::cot(Expr::constant(pi) * arg / Expr::constant(r))) -
                           1.0);
    }
    return Expr::constant(0.0);
}

/// Stairs of height h and width r: h * floor(x / r) away from the knots.
inline Expr staircase(StaircaseForm form, double h, double r, int p = 1, const Expr& arg = fn::x()) {
    detail::require_pulse(r, p);
    if (!std::isfinite(h)) throw InvalidArgument("stair height must be finite");
    if (form == StaircaseForm::sum)
        return Expr::constant(h / r) * (arg - Expr::constant(0.5) * detail::ramp_sum(arg, r, p));
    return Expr::constant(h) * (arg / Expr::constant(r) - detail::frac_trig(arg, r));
}

/// Rectangular pulses. The sign and arccot forms take values in {0, 1}; the ratio
/// form takes values in {-1, 0}. `r` is only used by the arccot form.
inline Expr rectangular(RectangularForm form, double t, double r = 1.0, const Expr& arg = fn::x()) {
    constexpr double pi = std::numbers::pi;
    if (!std::isfinite(t)) throw InvalidArgument("pulse offset t must be finite");
    switch (form) {
        case RectangularForm::sign:
            if (!(std::fabs(t) < 1)) throw InvalidArgument("sign rectangular pulse needs |t| < 1");
            return Expr::constant(0.5) -
                   Expr::constant(0.5) * fn::sign(fn::sin(Expr::constant(pi) * arg) + Expr::constant(t));
        case RectangularForm::arccot: {
            detail::require_pulse(r, 1);
            if (detail::is_integer(t / r)) throw InvalidArgument("arccot rectangular pulse needs t/r not an integer");
            Expr shifted = arg + Expr::constant(t);
            return Expr::constant(t / r) - detail::frac_trig(shifted, r) + detail::frac_trig(arg, r);
        }
        case RectangularForm::ratio: {
            if (detail::is_integer(t)) throw InvalidArgument("ratio rectangular pulse needs t not an integer");
            Expr a = Expr::constant(pi) * arg;
            Expr b = Expr::constant(pi) * (arg + Expr::constant(t));
            Expr ratio = (fn::asin(fn::sin(a)) / fn::atan(fn::tan(a))) * (fn::atan(fn::tan(b)) / fn::asin(fn::sin(b)));
            return Expr::constant(0.5) * (ratio - 1.0);
        }
    }
    return Expr::constant(0.0);
}

namespace detail {
inline Expr power_factor(Expr base, double exponent, bool abs_base) {
    if (abs_base) base = fn::abs(std::move(base));
    if (exponent == 1.0) return base;
    return fn::pow(std::move(base), exponent);
}
}  // namespace detail

/// Sum of a * x^b * y^c * z^d. Zero exponents drop the factor and unit coefficients
/// are omitted; an empty list is the constant 0.
inline Expr power_sum(std::span<const PowerTerm> terms) {
    std::vector<Expr> out;
    for (const PowerTerm& t : terms) {
        if (!std::isfinite(t.coeff) || !std::isfinite(t.ex) || !std::isfinite(t.ey) || !std::isfinite(t.ez))
            throw InvalidArgument("power term coefficients and exponents must be finite");
        std::vector<Expr> factors;
        if (t.ex != 0.0) factors.push_back(detail::power_factor(fn::x(), t.ex, t.abs_base));
        if (t.ey != 0.0) factors.push_back(detail::power_factor(fn::y(), t.ey, t.abs_base));
        if (t.ez != 0.0) factors.push_back(detail::power_factor(fn::z(), t.ez, t.abs_base));
        if (factors.empty()) {
            out.push_back(Expr::constant(t.coeff));
            continue;
        }
        Expr product = factors.front();
        for (std::size_t i = 1; i < factors.size(); ++i) product = product * factors[i];
        out.push_back(t.coeff == 1.0 ? product : Expr::constant(t.coeff) * product);
    }
    return detail::sum_of(std::move(out));
}

inline Expr power_sum(std::initializer_list<PowerTerm> terms) {
    return power_sum(std::span<const PowerTerm>(terms.begin(), terms.size()));
}

}  // namespace implicitforge

#endif
