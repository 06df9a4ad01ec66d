#ifndef IMPLICITFORGE_FIELD_HPP
#define IMPLICITFORGE_FIELD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "implicitforge/error.hpp"
#include "implicitforge/eval.hpp"
#include "implicitforge/expr.hpp"

namespace implicitforge {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Axis-aligned working space sampled at N points per axis, endpoints included.
struct GridSpec {
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
    double z_min = -1.0, z_max = 1.0;
    std::uint32_t nx = 2, ny = 2, nz = 2;

    static GridSpec cube(double lo, double hi, std::uint32_t n) { return {lo, hi, lo, hi, lo, hi, n, n, n}; }

    void validate() const {
        auto axis = [](double lo, double hi, std::uint32_t n, const char* name) {
            if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
                throw InvalidArgument(std::string("grid bounds on ") + name + " need finite min < max");
            if (n < 2) throw InvalidArgument(std::string("grid needs at least 2 points on ") + name);
        };
        axis(x_min, x_max, nx, "x");
        axis(y_min, y_max, ny, "y");
        axis(z_min, z_max, nz, "z");
    }

    std::size_t point_count() const noexcept { return std::size_t(nx) * ny * nz; }

    std::size_t index(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const noexcept {
        return ix + std::size_t(nx) * (iy + std::size_t(ny) * iz);
    }

    /// Diagonal length of one lattice cell.
    double cell_diagonal() const noexcept {
        double dx = (x_max - x_min) / (nx - 1);
        double dy = (y_max - y_min) / (ny - 1);
        double dz = (z_max - z_min) / (nz - 1);
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

namespace detail {
// lerp is exact at both ends, so the first and last lattice points are the bounds.
inline double lattice_coord(double lo, double hi, std::uint32_t i, std::uint32_t n) {
    return std::lerp(lo, hi, double(i) / double(n - 1));
}
}  // namespace detail

inline Vec3 grid_point(const GridSpec& spec, std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) {
    if (ix >= spec.nx || iy >= spec.ny || iz >= spec.nz) throw InvalidArgument("grid index out of range");
    return {detail::lattice_coord(spec.x_min, spec.x_max, ix, spec.nx),
            detail::lattice_coord(spec.y_min, spec.y_max, iy, spec.ny),
            detail::lattice_coord(spec.z_min, spec.z_max, iz, spec.nz)};
}

/// Sampled values, x fastest. Undefined samples are quiet NaN.
struct ScalarField {
    GridSpec spec;
    std::vector<double> values;

    double at(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const { return values[spec.index(ix, iy, iz)]; }
};

/// Resolve a requested worker count: 0 means the machine's parallelism.
inline unsigned worker_count(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {
/// Run `body(first, last)` over contiguous ranges of [0, n) on up to `threads` workers.
template <typename Body>
void parallel_ranges(std::size_t n, unsigned threads, Body body) {
    std::size_t workers = std::min<std::size_t>(worker_count(threads), n);
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t first = n * w / workers;
        std::size_t last = n * (w + 1) / workers;
        pool.emplace_back([=, &body] { body(first, last); });
    }
}
}  // namespace detail

struct SampleOptions {
    unsigned threads = 0;
};

/// Evaluate `e` at every lattice point. Work is split into z-slabs; each worker writes
/// a disjoint range, so the result does not depend on the worker count.
inline ScalarField sample_field(const Expr& e, const GridSpec& spec, const ParamSet& params = {},
                                SampleOptions options = {}) {
    spec.validate();
    auto names = free_names(e);
    for (Variable v : names.variables)
        if (v == Variable::u || v == Variable::v)
            throw InvalidArgument("field expressions may only use x, y, z (found '" +
                                  std::string(variable_name(v)) + "')");
    const CompiledExpr program(e, params);

    std::vector<double> xs(spec.nx), ys(spec.ny), zs(spec.nz);
    for (std::uint32_t i = 0; i < spec.nx; ++i) xs[i] = detail::lattice_coord(spec.x_min, spec.x_max, i, spec.nx);
    for (std::uint32_t i = 0; i < spec.ny; ++i) ys[i] = detail::lattice_coord(spec.y_min, spec.y_max, i, spec.ny);
    for (std::uint32_t i = 0; i < spec.nz; ++i) zs[i] = detail::lattice_coord(spec.z_min, spec.z_max, i, spec.nz);

    ScalarField field{spec, std::vector<double>(spec.point_count())};
    detail::parallel_ranges(spec.nz, options.threads, [&](std::size_t z_first, std::size_t z_last) {
        std::vector<double> stack;
        Coordinates at;
        for (std::size_t iz = z_first; iz < z_last; ++iz) {
            at.z = zs[iz];
            for (std::uint32_t iy = 0; iy < spec.ny; ++iy) {
                at.y = ys[iy];
                double* row = field.values.data() + spec.index(0, iy, std::uint32_t(iz));
                for (std::uint32_t ix = 0; ix < spec.nx; ++ix) {
                    at.x = xs[ix];
                    row[ix] = program.eval(at, stack);
                }
            }
        }
    });
    return field;
}

enum class Mark : std::uint8_t { outside, inside, unknown };

/// Inside iff value <= iso; undefined samples are unknown.
inline Mark classify_value(double v, double iso) noexcept {
    if (std::isnan(v)) return Mark::unknown;
    return v <= iso ? Mark::inside : Mark::outside;
}

struct Occupancy {
    GridSpec spec;
    std::vector<Mark> marks;
    std::size_t inside = 0;
    std::size_t outside = 0;
    std::size_t unknown = 0;
};

inline Occupancy classify(const ScalarField& f, double iso = 0.0) {
    Occupancy occ{f.spec, std::vector<Mark>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        Mark m = classify_value(f.values[i], iso);
        occ.marks[i] = m;
        switch (m) {
            case Mark::inside: ++occ.inside; break;
            case Mark::outside: ++occ.outside; break;
            case Mark::unknown: ++occ.unknown; break;
        }
    }
    return occ;
}

}  // namespace implicitforge

#endif
