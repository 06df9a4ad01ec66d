#ifndef IMPLICITFORGE_PRESETS_HPP
#define IMPLICITFORGE_PRESETS_HPP

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "implicitforge/constituents.hpp"
#include "implicitforge/error.hpp"
#include "implicitforge/expr.hpp"
#include "implicitforge/field.hpp"
#include "implicitforge/parametric.hpp"
#include "implicitforge/parser.hpp"

namespace implicitforge {

/// A named surface: an implicit expression over a working space, or (for the sign
/// surfaces) a parametric specification. `params` holds default bindings for every
/// parameter the expression uses.
struct SceneSpec {
    std::string name;
    std::string description;
    Expr expr = Expr::constant(0.0);
    GridSpec grid;
    ParamSet params;
    double iso = 0.0;
    std::optional<ParametricSpec> parametric;

    bool is_parametric() const noexcept { return parametric.has_value(); }
};

namespace presets {

// Equation A. The same subterms appear per axis; written out in full so the printed
// form is a faithful transcription.
inline constexpr std::string_view kEquationA =
    "(abs(x)^3.3+abs(y)^3.3+abs(z)^3.3-600)"
    "+(atan(tan(1-abs(x)^0.31+5.76*abs(x)^1.38/abs(abs(x)^1.3+abs(y)^1.3+abs(z)^1.3)))^3"
    "+atan(tan(1-abs(y)^0.31+5.76*abs(y)^1.38/abs(abs(x)^1.3+abs(y)^1.3+abs(z)^1.3)))^3"
    "+atan(tan(1-abs(z)^0.31+5.76*abs(z)^1.38/abs(abs(x)^1.3+abs(y)^1.3+abs(z)^1.3)))^3)^3"
    "-0.51*((abs(x)^0.3/abs(cot(m*x)))^0.3+(abs(y)^0.3/abs(cot(m*y)))^0.3+(abs(z)^0.3/abs(cot(m*z)))^0.3)^3"
    "+100";

// Equation B. The cos(0.1*y)^-1 factor appears in all three beta terms as printed.
inline constexpr std::string_view kEquationB =
    "1/24.4*(x^2+y^2+z^2-5)*(abs(x)^0.13*abs(y)^0.13*abs(z)^0.13-5)"
    "+(abs(cos(2*x))*atan(tan(12*(x^2+abs(y)^2+z^2)/(x^2*y^2+z^2)))^2*cos(0.1*y)^-1"
    "+abs(cos(2*y))*atan(tan(12*(y^2+abs(z)^2+x^2)/(x^2+y^2*z^2)))^2*cos(0.1*y)^-1"
    "+abs(cos(2*z))*atan(tan(12*(z^2+abs(x)^2+y^2)/(y^2+x^2*z^2)))^2*cos(0.1*y)^-1)^3"
    "-0.135";

inline constexpr std::string_view kEquationC =
    "(abs(cos(0.7*m*x^-1))/cos(0.003*x^2))^10"
    "+abs(sin(0.7*m*y))^10*abs(sin(0.7*m*z))^10/(cos(0.003*y^2)^10*cos(0.003*z^2)^10)"
    "-0.02*(x^3+y^2+z^2)";

inline constexpr std::array<std::string_view, 7> kNames = {"fig1-curve", "eqA", "eqB-I3", "eqB-I4",
                                                          "eqB-I5",     "eqC", "cube-sign"};

inline SceneSpec equation_b(std::string name, double bound, std::uint32_t n, std::string description) {
    SceneSpec s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.expr = parse(kEquationB);
    s.grid = GridSpec::cube(-bound, bound, n);
    return s;
}

}  // namespace presets

inline std::vector<std::string> preset_names() { return {presets::kNames.begin(), presets::kNames.end()}; }

inline SceneSpec preset(std::string_view name) {
    if (name == "fig1-curve") {
        SceneSpec s;
        s.name = "fig1-curve";
        s.description = "eight-segment concatenated curve f_cc(x) (1D, extruded along y and z)";
        s.expr = figure_curve();
        // 200 points keep the knots 1, 2, ..., 10.5 off the lattice.
        s.grid = {0.0, 11.0, -1.0, 1.0, -1.0, 1.0, 200, 2, 2};
        return s;
    }
    if (name == "eqA") {
        SceneSpec s;
        s.name = "eqA";
        s.description = "equation A, high sensitivity to m (I1: m=0.851, I2: m=0.861)";
        s.expr = parse(presets::kEquationA);
        s.grid = GridSpec::cube(-155.0, 155.0, 82);
        s.params.set("m", 0.851);
        return s;
    }
    if (name == "eqB-I3") return presets::equation_b("eqB-I3", 7.0, 34, "equation B, bounds 7, grid 34");
    if (name == "eqB-I4") return presets::equation_b("eqB-I4", 7.05, 34, "equation B, bounds 7.05, grid 34");
    if (name == "eqB-I5") return presets::equation_b("eqB-I5", 7.05, 33, "equation B, bounds 7.05, grid 33");
    if (name == "eqC") {
        SceneSpec s;
        s.name = "eqC";
        s.description = "equation C, low sensitivity to m (swept 0.25 to 1 by 0.25)";
        s.expr = parse(presets::kEquationC);
        // No working space is given for this equation; this one is a choice.
        s.grid = GridSpec::cube(-10.0, 10.0, 64);
        s.params.set("m", 0.25);
        return s;
    }
    if (name == "cube-sign") {
        constexpr double pi = std::numbers::pi;
        SceneSpec s;
        s.name = "cube-sign";
        s.description = "sign surface X=f/|f|, Y=g/|g|, Z=h/|h| over a sphere parametrization";
        ParametricSpec p;
        p.fx = parse("cos(u)*cos(v)");
        p.fy = parse("sin(u)*cos(v)");
        p.fz = parse("sin(v)");
        p.sign = {true, true, true};
        p.u_min = -pi;
        p.u_max = pi;
        p.v_min = -pi / 2;
        p.v_max = pi / 2;
        p.nu = 64;
        p.nv = 32;
        s.parametric = p;
        return s;
    }
    throw UnknownPreset(std::string(name));
}

}  // namespace implicitforge

#endif
