#ifndef IMPLICITFORGE_MESH_HPP
#define IMPLICITFORGE_MESH_HPP

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "implicitforge/error.hpp"
#include "implicitforge/field.hpp"

namespace implicitforge {

using Triangle = std::array<std::uint32_t, 3>;

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;

    bool empty() const noexcept { return triangles.empty(); }
};

/// Returns an empty string when the mesh is valid, otherwise the first problem found.
inline std::string mesh_problem(const TriangleMesh& m) {
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        const Vec3& v = m.vertices[i];
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
            return "vertex " + std::to_string(i) + " is not finite";
    }
    for (std::size_t i = 0; i < m.triangles.size(); ++i) {
        const Triangle& t = m.triangles[i];
        for (auto idx : t)
            if (idx >= m.vertices.size()) return "triangle " + std::to_string(i) + " index out of range";
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            return "triangle " + std::to_string(i) + " repeats a vertex";
    }
    return {};
}

struct EdgeStats {
    std::size_t edges = 0;
    std::size_t boundary = 0;      // used by one triangle
    std::size_t non_manifold = 0;  // used by more than two
};

/// Undirected edge usage counts.
inline EdgeStats edge_stats(const TriangleMesh& m) {
    std::unordered_map<std::uint64_t, int> uses;
    uses.reserve(m.triangles.size() * 2);
    for (const Triangle& t : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            std::uint64_t a = t[k], b = t[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            ++uses[(a << 32) | b];
        }
    }
    EdgeStats s;
    s.edges = uses.size();
    for (const auto& [edge, n] : uses) {
        if (n == 1) ++s.boundary;
        if (n > 2) ++s.non_manifold;
    }
    return s;
}

inline bool is_watertight(const TriangleMesh& m) {
    auto s = edge_stats(m);
    return !m.empty() && s.boundary == 0 && s.non_manifold == 0;
}

/// V - E + F, counting only vertices referenced by a triangle.
inline long long euler_characteristic(const TriangleMesh& m) {
    std::vector<bool> used(m.vertices.size(), false);
    for (const Triangle& t : m.triangles)
        for (auto i : t) used[i] = true;
    long long v = 0;
    for (bool u : used) v += u;
    return v - static_cast<long long>(edge_stats(m).edges) + static_cast<long long>(m.triangles.size());
}

/// Signed volume enclosed by a closed mesh; positive when triangles wind counter-clockwise seen from outside.
inline double signed_volume(const TriangleMesh& m) {
    double vol = 0.0;
    for (const Triangle& t : m.triangles) {
        const Vec3& a = m.vertices[t[0]];
        const Vec3& b = m.vertices[t[1]];
        const Vec3& c = m.vertices[t[2]];
        vol += a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x);
    }
    return vol / 6.0;
}

namespace detail {

inline void append_decimal(std::string& out, double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), ptr);
}

inline void check_sink(const std::ostream& out, const char* what) {
    if (!out) throw IoError(std::string("failed writing ") + what);
}

inline void put_f32(std::ostream& out, float f) {
    auto bits = std::bit_cast<std::uint32_t>(f);
    std::array<char, 4> bytes{};
    for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(bytes.data(), 4);
}

inline Vec3 unit_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 u{b.x - a.x, b.y - a.y, b.z - a.z};
    Vec3 w{c.x - a.x, c.y - a.y, c.z - a.z};
    Vec3 n{u.y * w.z - u.z * w.y, u.z * w.x - u.x * w.z, u.x * w.y - u.y * w.x};
    double len = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
    if (len == 0.0 || !std::isfinite(len)) return {};
    return {n.x / len, n.y / len, n.z / len};
}

}  // namespace detail

/// Wavefront OBJ: "v x y z" per vertex, "f a b c" per triangle (1-based), LF endings.
inline void export_obj(const TriangleMesh& m, std::ostream& out) {
    std::string line;
    for (const Vec3& v : m.vertices) {
        line = "v ";
        detail::append_decimal(line, v.x);
        line += ' ';
        detail::append_decimal(line, v.y);
        line += ' ';
        detail::append_decimal(line, v.z);
        line += '\n';
        out << line;
    }
    for (const Triangle& t : m.triangles)
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    detail::check_sink(out, "OBJ");
}

inline constexpr char kStlHeaderTag[] = "implicitforge";

/// Binary STL, little-endian: 80-byte header, u32 count, then per triangle the
/// right-hand unit normal and three vertices as f32 followed by a zero u16.
inline void export_stl(const TriangleMesh& m, std::ostream& out) {
    std::array<char, 80> header{};
    std::memcpy(header.data(), kStlHeaderTag, sizeof(kStlHeaderTag) - 1);
    out.write(header.data(), header.size());
    auto count = static_cast<std::uint32_t>(m.triangles.size());
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((count >> (8 * i)) & 0xff));
    for (const Triangle& t : m.triangles) {
        const Vec3& a = m.vertices[t[0]];
        const Vec3& b = m.vertices[t[1]];
        const Vec3& c = m.vertices[t[2]];
        Vec3 n = detail::unit_normal(a, b, c);
        for (const Vec3& p : {n, a, b, c}) {
            detail::put_f32(out, static_cast<float>(p.x));
            detail::put_f32(out, static_cast<float>(p.y));
            detail::put_f32(out, static_cast<float>(p.z));
        }
        out.put(0);
        out.put(0);
    }
    detail::check_sink(out, "STL");
}

/// ASCII PLY with the minimal vertex/face header.
inline void export_ply(const TriangleMesh& m, std::ostream& out) {
    out << "ply\nformat ascii 1.0\n"
        << "element vertex " << m.vertices.size() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "element face " << m.triangles.size() << "\n"
        << "property list uchar uint vertex_indices\nend_header\n";
    std::string line;
    for (const Vec3& v : m.vertices) {
        line.clear();
        detail::append_decimal(line, v.x);
        line += ' ';
        detail::append_decimal(line, v.y);
        line += ' ';
        detail::append_decimal(line, v.z);
        line += '\n';
        out << line;
    }
    for (const Triangle& t : m.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    detail::check_sink(out, "PLY");
}

}  // namespace implicitforge

#endif
