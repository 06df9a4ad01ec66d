#ifndef IMPLICITFORGE_MARCHING_CUBES_HPP
#define IMPLICITFORGE_MARCHING_CUBES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "implicitforge/field.hpp"
#include "implicitforge/mc_tables.hpp"
#include "implicitforge/mesh.hpp"

namespace implicitforge {

struct MeshOptions {
    unsigned threads = 0;
};

namespace detail {

/// Lattice edge identifier: 3 * (index of the lower endpoint) + axis.
using EdgeKey = std::uint64_t;

/// Case index of a cell, or -1 when a corner is undefined.
inline int cell_case(const ScalarField& f, std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, double iso) {
    int index = 0;
    for (int c = 0; c < 8; ++c) {
        const auto& o = mc::kCornerOffset[c];
        double v = f.at(ix + o[0], iy + o[1], iz + o[2]);
        if (std::isnan(v)) return -1;
        if (v <= iso) index |= 1 << c;
    }
    return index;
}

inline EdgeKey edge_key(const GridSpec& spec, std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, int edge) {
    const auto& a = mc::kCornerOffset[mc::kEdgeCorners[edge][0]];
    const auto& b = mc::kCornerOffset[mc::kEdgeCorners[edge][1]];
    int axis = a[0] != b[0] ? 0 : (a[1] != b[1] ? 1 : 2);
    std::uint32_t lx = ix + std::min(a[0], b[0]);
    std::uint32_t ly = iy + std::min(a[1], b[1]);
    std::uint32_t lz = iz + std::min(a[2], b[2]);
    return EdgeKey(spec.index(lx, ly, lz)) * 3 + axis;
}

}  // namespace detail

/// Standard 256-case marching cubes. A corner is inside when its value is <= iso.
/// Cells with an undefined corner emit nothing. Vertices shared by neighbouring cells
/// are welded by lattice edge; triangle and vertex order follow the x-fastest cell scan
/// and do not depend on the worker count.
inline TriangleMesh marching_cubes(const ScalarField& f, double iso = 0.0, MeshOptions options = {}) {
    const GridSpec& spec = f.spec;
    spec.validate();
    if (f.values.size() != spec.point_count()) throw InvalidArgument("field value count does not match its grid");

    using Face = std::array<detail::EdgeKey, 3>;
    const std::size_t layers = spec.nz - 1;
    std::vector<std::vector<Face>> per_layer(layers);
    detail::parallel_ranges(layers, options.threads, [&](std::size_t first, std::size_t last) {
        for (std::size_t iz = first; iz < last; ++iz) {
            auto& out = per_layer[iz];
            for (std::uint32_t iy = 0; iy + 1 < spec.ny; ++iy) {
                for (std::uint32_t ix = 0; ix + 1 < spec.nx; ++ix) {
                    int c = detail::cell_case(f, ix, iy, std::uint32_t(iz), iso);
                    if (c <= 0 || c == 255) continue;
                    const auto& tris = mc::kTriTable[c];
                    for (int k = 0; tris[k] != -1; k += 3) {
                        // Table triangles wind clockwise seen from the outside; emit reversed
                        // so normals point toward increasing field values.
                        out.push_back({detail::edge_key(spec, ix, iy, std::uint32_t(iz), tris[k]),
                                       detail::edge_key(spec, ix, iy, std::uint32_t(iz), tris[k + 2]),
                                       detail::edge_key(spec, ix, iy, std::uint32_t(iz), tris[k + 1])});
                    }
                }
            }
        }
    });

    std::vector<double> xs(spec.nx), ys(spec.ny), zs(spec.nz);
    for (std::uint32_t i = 0; i < spec.nx; ++i) xs[i] = detail::lattice_coord(spec.x_min, spec.x_max, i, spec.nx);
    for (std::uint32_t i = 0; i < spec.ny; ++i) ys[i] = detail::lattice_coord(spec.y_min, spec.y_max, i, spec.ny);
    for (std::uint32_t i = 0; i < spec.nz; ++i) zs[i] = detail::lattice_coord(spec.z_min, spec.z_max, i, spec.nz);

    auto vertex_on = [&](detail::EdgeKey key) {
        std::size_t lower = key / 3;
        int axis = int(key % 3);
        auto ix = std::uint32_t(lower % spec.nx);
        auto iy = std::uint32_t((lower / spec.nx) % spec.ny);
        auto iz = std::uint32_t(lower / (std::size_t(spec.nx) * spec.ny));
        std::size_t upper = lower + (axis == 0 ? 1 : axis == 1 ? std::size_t(spec.nx) : std::size_t(spec.nx) * spec.ny);
        double v0 = f.values[lower];
        double v1 = f.values[upper];
        double t = (iso - v0) / (v1 - v0);
        Vec3 p{xs[ix], ys[iy], zs[iz]};
        if (axis == 0) p.x = xs[ix] + t * (xs[ix + 1] - xs[ix]);
        if (axis == 1) p.y = ys[iy] + t * (ys[iy + 1] - ys[iy]);
        if (axis == 2) p.z = zs[iz] + t * (zs[iz + 1] - zs[iz]);
        return p;
    };

    TriangleMesh mesh;
    std::unordered_map<detail::EdgeKey, std::uint32_t> welded;
    for (const auto& layer : per_layer) {
        for (const Face& face : layer) {
            Triangle tri{};
            for (int k = 0; k < 3; ++k) {
                auto [it, fresh] = welded.try_emplace(face[k], std::uint32_t(mesh.vertices.size()));
                if (fresh) mesh.vertices.push_back(vertex_on(face[k]));
                tri[k] = it->second;
            }
            mesh.triangles.push_back(tri);
        }
    }
    return mesh;
}

}  // namespace implicitforge

#endif
