#ifndef IMPLICITFORGE_SENSITIVITY_HPP
#define IMPLICITFORGE_SENSITIVITY_HPP

// Quantitative stand-ins for "the shape changed a lot / a little":
//   sign_distance  fraction of lattice points whose inside/outside/unknown mark differs
//   surface_cells  number of cells the iso-surface passes through (0 = no shape)
//   hausdorff      symmetric vertex-set Hausdorff distance between two meshes

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "implicitforge/error.hpp"
#include "implicitforge/field.hpp"
#include "implicitforge/marching_cubes.hpp"
#include "implicitforge/mesh.hpp"
#include "implicitforge/presets.hpp"

namespace implicitforge {

/// Index-aligned comparison; bounds may differ but lattice dimensions must match.
/// Unknown differs from inside and outside but equals unknown.
inline double sign_distance(const ScalarField& a, const ScalarField& b, double iso = 0.0) {
    if (a.spec.nx != b.spec.nx || a.spec.ny != b.spec.ny || a.spec.nz != b.spec.nz)
        throw InvalidArgument("sign_distance needs fields with identical lattice dimensions");
    if (a.values.size() != a.spec.point_count() || b.values.size() != b.spec.point_count())
        throw InvalidArgument("field value count does not match its grid");
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        differ += classify_value(a.values[i], iso) != classify_value(b.values[i], iso);
    return a.values.empty() ? 0.0 : double(differ) / double(a.values.size());
}

/// Cells with all eight corners defined and corners on both sides of iso.
inline std::size_t surface_cells(const ScalarField& f, double iso = 0.0) {
    const GridSpec& s = f.spec;
    std::size_t count = 0;
    for (std::uint32_t iz = 0; iz + 1 < s.nz; ++iz)
        for (std::uint32_t iy = 0; iy + 1 < s.ny; ++iy)
            for (std::uint32_t ix = 0; ix + 1 < s.nx; ++ix) {
                int c = detail::cell_case(f, ix, iy, iz, iso);
                count += c > 0 && c < 255;
            }
    return count;
}

namespace detail {

/// max over a of min over b of |a - b|, squared. `sorted_b` is ordered by x.
inline double directed_hausdorff_sq(std::span<const Vec3> a, std::span<const Vec3> sorted_b) {
    auto d2 = [](const Vec3& p, const Vec3& q) {
        double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
        return dx * dx + dy * dy + dz * dz;
    };
    double worst = 0.0;
    for (const Vec3& p : a) {
        auto mid = std::lower_bound(sorted_b.begin(), sorted_b.end(), p.x,
                                    [](const Vec3& q, double x) { return q.x < x; });
        double best = std::numeric_limits<double>::infinity();
        auto right = mid;
        auto left = mid;
        // Expand outward in x; stop a side once its x gap alone exceeds the best distance.
        // Also stop once best drops below the running maximum, since p cannot raise it.
        while (best > worst && (right != sorted_b.end() || left != sorted_b.begin())) {
            bool progressed = false;
            if (right != sorted_b.end()) {
                double gap = right->x - p.x;
                if (gap * gap <= best) {
                    best = std::min(best, d2(p, *right));
                    ++right;
                    progressed = true;
                } else {
                    right = sorted_b.end();
                }
            }
            if (left != sorted_b.begin()) {
                auto cand = std::prev(left);
                double gap = p.x - cand->x;
                if (gap * gap <= best) {
                    best = std::min(best, d2(p, *cand));
                    left = cand;
                    progressed = true;
                } else {
                    left = sorted_b.begin();
                }
            }
            if (!progressed) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

inline std::vector<Vec3> sorted_by_x(const std::vector<Vec3>& v) {
    std::vector<Vec3> out = v;
    std::sort(out.begin(), out.end(), [](const Vec3& p, const Vec3& q) {
        if (p.x != q.x) return p.x < q.x;
        if (p.y != q.y) return p.y < q.y;
        return p.z < q.z;
    });
    return out;
}

}  // namespace detail

/// Symmetric Hausdorff distance between the vertex sets of two meshes (exact, no sampling
/// of triangle interiors).
inline double hausdorff(const TriangleMesh& a, const TriangleMesh& b) {
    if (a.vertices.empty() || b.vertices.empty()) throw InvalidArgument("hausdorff needs two non-empty meshes");
    auto sa = detail::sorted_by_x(a.vertices);
    auto sb = detail::sorted_by_x(b.vertices);
    double ab = detail::directed_hausdorff_sq(a.vertices, sb);
    double ba = detail::directed_hausdorff_sq(b.vertices, sa);
    return std::sqrt(std::max(ab, ba));
}

struct SweepRow {
    double value = 0.0;
    std::size_t surface_cells = 0;
    double inside_fraction = 0.0;
    double unknown_fraction = 0.0;
    std::optional<double> sign_distance_prev;
    std::size_t mesh_vertices = 0;
};

struct SweepReport {
    std::string scene;
    std::string param;
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    unsigned threads = 0;
    /// Called with each row's value and mesh, in row order.
    std::function<void(double, const TriangleMesh&)> on_mesh;
};

/// Values from, from + step, ... up to `to` (inclusive within a small tolerance),
/// each computed as from + k * step.
inline std::vector<double> sweep_values(double from, double to, double step) {
    if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step) || !(step > 0) || to < from)
        throw InvalidArgument("sweep range needs finite from <= to and step > 0");
    std::vector<double> out;
    const double slack = 1e-9 * step;
    for (std::size_t k = 0;; ++k) {
        double v = from + double(k) * step;
        if (v > to + slack) break;
        out.push_back(v);
        if (out.size() > 1000000) throw InvalidArgument("sweep range has too many values");
    }
    return out;
}

inline SweepReport sweep(const SceneSpec& scene, const std::string& param, std::span<const double> values,
                         const SweepOptions& options = {}) {
    if (scene.is_parametric()) throw InvalidArgument("cannot sweep parametric scene '" + scene.name + "'");
    if (values.empty()) throw InvalidArgument("sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i - 1] < values[i])) throw InvalidArgument("sweep values must be strictly increasing");
    if (!free_names(scene.expr).params.count(param))
        throw InvalidArgument("parameter '" + param + "' does not appear in scene '" + scene.name + "'");

    SweepReport report{scene.name, param, {}};
    std::optional<ScalarField> previous;
    for (double value : values) {
        ParamSet params = scene.params;
        params.set(param, value);
        ScalarField field = sample_field(scene.expr, scene.grid, params, {options.threads});
        Occupancy occ = classify(field, scene.iso);
        TriangleMesh mesh = marching_cubes(field, scene.iso, {options.threads});

        SweepRow row;
        row.value = value;
        row.surface_cells = surface_cells(field, scene.iso);
        row.inside_fraction = double(occ.inside) / double(occ.marks.size());
        row.unknown_fraction = double(occ.unknown) / double(occ.marks.size());
        if (previous) row.sign_distance_prev = sign_distance(*previous, field, scene.iso);
        row.mesh_vertices = mesh.vertices.size();
        report.rows.push_back(row);

        if (options.on_mesh) options.on_mesh(value, mesh);
        previous = std::move(field);
    }
    return report;
}

inline nlohmann::ordered_json to_json(const SweepReport& r) {
    nlohmann::ordered_json j;
    j["scene"] = r.scene;
    j["param"] = r.param;
    j["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& row : r.rows) {
        nlohmann::ordered_json jr;
        jr["value"] = row.value;
        jr["surface_cells"] = row.surface_cells;
        jr["inside_fraction"] = row.inside_fraction;
        jr["unknown_fraction"] = row.unknown_fraction;
        jr["sign_distance_prev"] = row.sign_distance_prev ? nlohmann::ordered_json(*row.sign_distance_prev) : nullptr;
        jr["mesh_vertices"] = row.mesh_vertices;
        j["rows"].push_back(std::move(jr));
    }
    return j;
}

inline SweepReport report_from_json(const nlohmann::json& j) {
    SweepReport r;
    try {
        r.scene = j.at("scene").get<std::string>();
        r.param = j.at("param").get<std::string>();
        for (const auto& jr : j.at("rows")) {
            SweepRow row;
            row.value = jr.at("value").get<double>();
            row.surface_cells = jr.at("surface_cells").get<std::size_t>();
            row.inside_fraction = jr.at("inside_fraction").get<double>();
            row.unknown_fraction = jr.at("unknown_fraction").get<double>();
            if (!jr.at("sign_distance_prev").is_null()) row.sign_distance_prev = jr["sign_distance_prev"].get<double>();
            row.mesh_vertices = jr.at("mesh_vertices").get<std::size_t>();
            r.rows.push_back(row);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed sweep report: ") + e.what());
    }
    return r;
}

}  // namespace implicitforge

#endif
