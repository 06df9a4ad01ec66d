#ifndef IMPLICITFORGE_IFLD_HPP
#define IMPLICITFORGE_IFLD_HPP

// IFLD v1: a sampled scalar field, all little-endian.
//
//   offset  size        content
//   0       4           magic "IFLD"
//   4       4           u32 version = 1
//   8       12          u32 nx, ny, nz
//   20      48          f64 x_min, x_max, y_min, y_max, z_min, z_max
//   68      8*nx*ny*nz  f64 values, x fastest
//
// Undefined samples are written as the canonical quiet NaN 0x7ff8000000000000.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>

#include "implicitforge/error.hpp"
#include "implicitforge/field.hpp"

namespace implicitforge {

inline constexpr std::array<char, 4> kIfldMagic = {'I', 'F', 'L', 'D'};
inline constexpr std::uint32_t kIfldVersion = 1;
inline constexpr std::size_t kIfldHeaderSize = 68;
inline constexpr std::uint64_t kCanonicalNanBits = 0x7ff8000000000000ULL;

namespace detail {

template <typename UInt>
void put_le(std::ostream& out, UInt v) {
    std::array<char, sizeof(UInt)> bytes{};
    for (std::size_t i = 0; i < sizeof(UInt); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(bytes.data(), bytes.size());
}

template <typename UInt>
UInt get_le(std::istream& in, const char* what) {
    std::array<unsigned char, sizeof(UInt)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
        throw IoError(std::string("truncated IFLD stream while reading ") + what);
    UInt v = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= UInt(bytes[i]) << (8 * i);
    return v;
}

inline std::uint64_t canonical_bits(double v) {
    return std::isnan(v) ? kCanonicalNanBits : std::bit_cast<std::uint64_t>(v);
}

}  // namespace detail

inline void write_field(const ScalarField& f, std::ostream& out) {
    f.spec.validate();
    if (f.values.size() != f.spec.point_count()) throw InvalidArgument("field value count does not match its grid");
    out.write(kIfldMagic.data(), kIfldMagic.size());
    detail::put_le<std::uint32_t>(out, kIfldVersion);
    detail::put_le<std::uint32_t>(out, f.spec.nx);
    detail::put_le<std::uint32_t>(out, f.spec.ny);
    detail::put_le<std::uint32_t>(out, f.spec.nz);
    for (double b : {f.spec.x_min, f.spec.x_max, f.spec.y_min, f.spec.y_max, f.spec.z_min, f.spec.z_max})
        detail::put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(b));
    for (double v : f.values) detail::put_le<std::uint64_t>(out, detail::canonical_bits(v));
    if (!out) throw IoError("failed writing IFLD stream");
}

inline ScalarField read_field(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size())) throw IoError("truncated IFLD stream while reading magic");
    if (magic != kIfldMagic) throw IoError("bad IFLD magic");
    auto version = detail::get_le<std::uint32_t>(in, "version");
    if (version != kIfldVersion) throw IoError("unsupported IFLD version " + std::to_string(version));

    GridSpec spec;
    spec.nx = detail::get_le<std::uint32_t>(in, "nx");
    spec.ny = detail::get_le<std::uint32_t>(in, "ny");
    spec.nz = detail::get_le<std::uint32_t>(in, "nz");
    double* bounds[] = {&spec.x_min, &spec.x_max, &spec.y_min, &spec.y_max, &spec.z_min, &spec.z_max};
    for (double* b : bounds) *b = std::bit_cast<double>(detail::get_le<std::uint64_t>(in, "bounds"));
    try {
        spec.validate();
    } catch (const InvalidArgument& e) {
        throw IoError(std::string("invalid IFLD header: ") + e.what());
    }

    // The product of three u32 fits in 96 bits; reject anything that does not fit a size_t of doubles.
    constexpr std::uint64_t max_values = std::numeric_limits<std::size_t>::max() / sizeof(double);
    std::uint64_t count = std::uint64_t(spec.nx) * spec.ny;
    if (spec.nz != 0 && count > max_values / spec.nz) throw IoError("IFLD dimensions overflow");
    count *= spec.nz;

    ScalarField f{spec, {}};
    // Grow incrementally so a lying header on a short stream fails as truncation, not as a huge allocation.
    constexpr std::uint64_t chunk = 1 << 16;
    f.values.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, chunk)));
    for (std::uint64_t i = 0; i < count; ++i) {
        auto bits = detail::get_le<std::uint64_t>(in, "values");
        double v = std::bit_cast<double>(bits);
        f.values.push_back(std::isnan(v) ? std::bit_cast<double>(kCanonicalNanBits) : v);
    }
    return f;
}

}  // namespace implicitforge

#endif
