#ifndef IMPLICITFORGE_TESTS_CLOSED_FORM_HPP
#define IMPLICITFORGE_TESTS_CLOSED_FORM_HPP

#include <cmath>
#include <numbers>

// Direct evaluations of the constituent shapes via floor, independent of the expression trees.
namespace closed_form {

inline double frac(double v) { return v - std::floor(v); }

inline double sawtooth(double x, double r) { return frac(x / r); }

/// 1 -> 0 -> 1 triangle (sum and arccot forms).
inline double triangular_valley(double x, double r) { return std::fabs(2.0 * frac(x / r) - 1.0); }

/// 0 -> 1 -> 0 triangle (acos form).
inline double triangular_peak(double x, double r) { return 1.0 - std::fabs(2.0 * frac(x / r) - 1.0); }

inline double staircase(double x, double h, double r) { return h * std::floor(x / r); }

inline double rectangular_sign(double x, double t) { return std::sin(std::numbers::pi * x) + t < 0 ? 1.0 : 0.0; }

inline double rectangular_arccot(double x, double t, double r) { return frac(x / r) - frac((x + t) / r) + t / r; }

inline double rectangular_ratio(double x, double t) {
    auto quadrant_sign = [](double v) { return std::cos(std::numbers::pi * v) > 0 ? 1.0 : -1.0; };
    return 0.5 * (quadrant_sign(x) * quadrant_sign(x + t) - 1.0);
}

}  // namespace closed_form

#endif
