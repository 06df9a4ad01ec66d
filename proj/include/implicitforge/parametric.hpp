#ifndef IMPLICITFORGE_PARAMETRIC_HPP
#define IMPLICITFORGE_PARAMETRIC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "implicitforge/error.hpp"
#include "implicitforge/eval.hpp"
#include "implicitforge/expr.hpp"
#include "implicitforge/mesh.hpp"

namespace implicitforge {

/// Surface (X, Y, Z) = (fx(u,v), fy(u,v), fz(u,v)); a sign-flagged axis is mapped
/// through w -> w/|w|, which quantizes it to {-1, 1} and is undefined at 0.
struct ParametricSpec {
    Expr fx = Expr::constant(0.0);
    Expr fy = Expr::constant(0.0);
    Expr fz = Expr::constant(0.0);
    std::array<bool, 3> sign = {false, false, false};
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;
    std::uint32_t nu = 2, nv = 2;
    /// Quads whose corners differ by more than this on any coordinate are skipped.
    double jump_threshold = 1.0;
};

inline TriangleMesh sample_parametric_sign(const ParametricSpec& spec, const ParamSet& params = {}) {
    if (spec.nu < 2 || spec.nv < 2) throw InvalidArgument("parametric lattice needs at least 2 points per axis");
    if (!(spec.u_min < spec.u_max) || !(spec.v_min < spec.v_max))
        throw InvalidArgument("parametric ranges need min < max");
    if (!(spec.jump_threshold > 0)) throw InvalidArgument("jump threshold must be positive");
    for (const Expr* e : {&spec.fx, &spec.fy, &spec.fz}) {
        for (Variable v : free_names(*e).variables)
            if (v != Variable::u && v != Variable::v)
                throw InvalidArgument("parametric expressions may only use u and v (found '" +
                                      std::string(variable_name(v)) + "')");
    }
    const std::array<CompiledExpr, 3> programs = {CompiledExpr(spec.fx, params), CompiledExpr(spec.fy, params),
                                                  CompiledExpr(spec.fz, params)};

    const std::size_t count = std::size_t(spec.nu) * spec.nv;
    std::vector<Vec3> lattice(count);
    std::vector<bool> defined(count);
    std::vector<double> stack;
    for (std::uint32_t iv = 0; iv < spec.nv; ++iv) {
        for (std::uint32_t iu = 0; iu < spec.nu; ++iu) {
            Coordinates at;
            at.u = std::lerp(spec.u_min, spec.u_max, double(iu) / (spec.nu - 1));
            at.v = std::lerp(spec.v_min, spec.v_max, double(iv) / (spec.nv - 1));
            std::array<double, 3> p{};
            for (int k = 0; k < 3; ++k) {
                double w = programs[k].eval(at, stack);
                p[k] = spec.sign[k] ? apply(UnaryOp::sign, w) : w;
            }
            std::size_t i = iu + std::size_t(spec.nu) * iv;
            lattice[i] = {p[0], p[1], p[2]};
            defined[i] = !std::isnan(p[0]) && !std::isnan(p[1]) && !std::isnan(p[2]);
        }
    }

    TriangleMesh mesh;
    std::vector<std::uint32_t> remap(count, UINT32_MAX);
    auto vertex = [&](std::size_t i) {
        if (remap[i] == UINT32_MAX) {
            remap[i] = std::uint32_t(mesh.vertices.size());
            mesh.vertices.push_back(lattice[i]);
        }
        return remap[i];
    };
    for (std::uint32_t iv = 0; iv + 1 < spec.nv; ++iv) {
        for (std::uint32_t iu = 0; iu + 1 < spec.nu; ++iu) {
            std::size_t a = iu + std::size_t(spec.nu) * iv;
            std::size_t b = a + 1;
            std::size_t c = a + spec.nu + 1;
            std::size_t d = a + spec.nu;
            if (!defined[a] || !defined[b] || !defined[c] || !defined[d]) continue;
            double jump = 0.0;
            for (double Vec3::*axis : {&Vec3::x, &Vec3::y, &Vec3::z}) {
                auto [mn, mx] = std::minmax({lattice[a].*axis, lattice[b].*axis, lattice[c].*axis, lattice[d].*axis});
                jump = std::max(jump, mx - mn);
            }
            if (jump > spec.jump_threshold) continue;
            std::uint32_t va = vertex(a), vb = vertex(b), vc = vertex(c), vd = vertex(d);
            mesh.triangles.push_back({va, vb, vc});
            mesh.triangles.push_back({va, vc, vd});
        }
    }
    return mesh;
}

}  // namespace implicitforge

#endif
