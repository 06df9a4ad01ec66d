#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <sstream>

#include "implicitforge/eval.hpp"
#include "implicitforge/field.hpp"
#include "implicitforge/ifld.hpp"
#include "implicitforge/parser.hpp"
#include "implicitforge/presets.hpp"

using namespace implicitforge;

namespace {

ScalarField sample(const char* src, GridSpec spec, unsigned threads = 0) {
    return sample_field(parse(src), spec, {}, {threads});
}

std::string to_bytes(const ScalarField& f) {
    std::ostringstream out(std::ios::binary);
    write_field(f, out);
    return out.str();
}

ScalarField from_bytes(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    return read_field(in);
}

std::vector<std::uint64_t> bits(const std::vector<double>& v) {
    std::vector<std::uint64_t> out;
    for (double d : v) out.push_back(std::bit_cast<std::uint64_t>(d));
    return out;
}

}  // namespace

// ---------------------------------------------------------------- grid

TEST(GridPoint, InclusiveLinspace) {
    GridSpec s{0, 1, 0, 1, 0, 1, 5, 2, 2};
    const double want[] = {0, 0.25, 0.5, 0.75, 1};
    for (std::uint32_t i = 0; i < 5; ++i) EXPECT_EQ(grid_point(s, i, 0, 0).x, want[i]);
}

TEST(GridPoint, PresetBounds) {
    GridSpec a = preset("eqA").grid;
    EXPECT_EQ(grid_point(a, 0, 0, 0).x, -155.0);
    EXPECT_EQ(grid_point(a, 81, 81, 81).x, 155.0);
    EXPECT_EQ(grid_point(a, 81, 81, 81).z, 155.0);
    EXPECT_EQ(grid_point(preset("eqB-I5").grid, 16, 16, 16).x, 0.0);
}

TEST(GridPoint, EndpointsExactOnAwkwardBounds) {
    GridSpec s{-7.05, 7.05, 0.1, 0.7, -1e-3, 3.3, 34, 7, 33};
    for (std::uint32_t n : {2u, 3u, 33u, 34u, 82u, 1000u}) {
        s.nx = n;
        EXPECT_EQ(grid_point(s, 0, 0, 0).x, -7.05);
        EXPECT_EQ(grid_point(s, n - 1, 0, 0).x, 7.05);
    }
    EXPECT_EQ(grid_point(s, 0, 6, 32).y, 0.7);
    EXPECT_EQ(grid_point(s, 0, 6, 32).z, 3.3);
}

TEST(GridPoint, IndexOutOfRange) {
    GridSpec s = GridSpec::cube(0, 1, 3);
    EXPECT_THROW(grid_point(s, 3, 0, 0), InvalidArgument);
    EXPECT_THROW(grid_point(s, 0, 0, 3), InvalidArgument);
}

TEST(GridSpecTest, Validation) {
    EXPECT_THROW(GridSpec::cube(1, 1, 3).validate(), InvalidArgument);
    EXPECT_THROW(GridSpec::cube(0, 1, 1).validate(), InvalidArgument);
    EXPECT_THROW(GridSpec::cube(0, INFINITY, 3).validate(), InvalidArgument);
    EXPECT_NO_THROW(GridSpec::cube(-1, 1, 2).validate());
}

// ---------------------------------------------------------------- sampling

TEST(SampleField, SphereHandValues) {
    ScalarField f = sample("x^2+y^2+z^2-1", GridSpec::cube(-1, 1, 3));
    ASSERT_EQ(f.values.size(), 27u);
    EXPECT_EQ(f.at(1, 1, 1), -1.0);
    for (std::uint32_t iz : {0u, 2u})
        for (std::uint32_t iy : {0u, 2u})
            for (std::uint32_t ix : {0u, 2u}) EXPECT_EQ(f.at(ix, iy, iz), 2.0);
    EXPECT_EQ(f.at(2, 1, 1), 0.0);
}

TEST(SampleField, XFastestLayout) {
    ScalarField f = sample("x+10*y+100*z", GridSpec{0, 2, 0, 1, 0, 1, 3, 2, 2});
    const double want[] = {0, 1, 2, 10, 11, 12, 100, 101, 102, 110, 111, 112};
    ASSERT_EQ(f.values.size(), 12u);
    for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(f.values[i], want[i]);
}

TEST(SampleField, SingularPlane) {
    ScalarField f = sample("1/x", GridSpec::cube(-1, 1, 3));
    std::size_t undefined = 0;
    for (double v : f.values) undefined += is_undefined(v);
    EXPECT_EQ(undefined, 9u);
    for (std::uint32_t iz = 0; iz < 3; ++iz)
        for (std::uint32_t iy = 0; iy < 3; ++iy) EXPECT_TRUE(is_undefined(f.at(1, iy, iz)));
}

TEST(SampleField, MatchesPointwiseEvaluate) {
    Expr e = parse("sin(3*x)*cos(2*y)+z^3-m");
    ParamSet p{{"m", 0.2}};
    GridSpec s{-2, 1, -1, 3, 0.5, 2.5, 7, 5, 4};
    ScalarField f = sample_field(e, s, p);
    for (std::uint32_t iz = 0; iz < s.nz; ++iz)
        for (std::uint32_t iy = 0; iy < s.ny; ++iy)
            for (std::uint32_t ix = 0; ix < s.nx; ++ix) {
                Vec3 g = grid_point(s, ix, iy, iz);
                EXPECT_EQ(f.at(ix, iy, iz), evaluate(e, g.x, g.y, g.z, p));
            }
}

TEST(SampleField, DeterministicAcrossWorkerCounts) {
    SceneSpec s = preset("eqC");
    s.grid = GridSpec::cube(-10, 10, 24);
    auto base = bits(sample_field(s.expr, s.grid, s.params, {1}).values);
    for (unsigned t : {2u, 3u, 8u, 0u}) EXPECT_EQ(bits(sample_field(s.expr, s.grid, s.params, {t}).values), base) << t;
    EXPECT_EQ(bits(sample_field(s.expr, s.grid, s.params, {1}).values), base);
}

TEST(SampleField, Errors) {
    EXPECT_THROW(sample("m*x", GridSpec::cube(0, 1, 2)), UnboundParameter);
    EXPECT_THROW(sample("u+x", GridSpec::cube(0, 1, 2)), InvalidArgument);
    EXPECT_THROW(sample("x", GridSpec::cube(0, 1, 1)), InvalidArgument);
}

TEST(SampleField, EquationAHasBothSigns) {
    SceneSpec s = preset("eqA");
    ScalarField f = sample_field(s.expr, s.grid, s.params);
    bool neg = false, pos = false;
    for (double v : f.values) {
        neg |= v < 0;
        pos |= v > 0;
    }
    EXPECT_TRUE(neg);
    EXPECT_TRUE(pos);
}

// ---------------------------------------------------------------- classify

TEST(Classify, SphereCounts) {
    Occupancy occ = classify(sample("x^2+y^2+z^2-1", GridSpec::cube(-1, 1, 3)), 0);
    EXPECT_EQ(occ.inside, 7u);  // the center plus the six face centers, which sit exactly on the surface
    EXPECT_EQ(occ.outside, 20u);
    EXPECT_EQ(occ.unknown, 0u);
}

TEST(Classify, BoundaryValueCountsAsInside) {
    EXPECT_EQ(classify_value(0.5, 0.5), Mark::inside);
    EXPECT_EQ(classify_value(std::nextafter(0.5, 1.0), 0.5), Mark::outside);
    EXPECT_EQ(classify_value(kUndefined, 0.5), Mark::unknown);
}

TEST(Classify, AllPositiveAndSingular) {
    EXPECT_EQ(classify(sample("x^2+1", GridSpec::cube(-1, 1, 4))).inside, 0u);
    Occupancy occ = classify(sample("1/x", GridSpec::cube(-1, 1, 3)));
    EXPECT_EQ(occ.unknown, 9u);
    EXPECT_EQ(occ.inside + occ.outside, 18u);
}

// ---------------------------------------------------------------- IFLD

TEST(Ifld, ZeroFieldSize) {
    ScalarField f{GridSpec::cube(0, 1, 2), std::vector<double>(8, 0.0)};
    std::string b = to_bytes(f);
    EXPECT_EQ(b.size(), 132u);
    EXPECT_EQ(b.substr(0, 4), "IFLD");
}

TEST(Ifld, LittleEndianLayout) {
    ScalarField f{GridSpec{-1, 2, 0, 1, 0, 1, 2, 3, 2}, std::vector<double>(12, 0.0)};
    f.values[1] = 1.0;
    f.values[11] = kUndefined;
    std::string b = to_bytes(f);
    ASSERT_EQ(b.size(), 68u + 96u);
    auto u32 = [&](std::size_t at) {
        std::uint32_t v = 0;
        for (int k = 3; k >= 0; --k) v = (v << 8) | std::uint8_t(b[at + k]);
        return v;
    };
    auto u64 = [&](std::size_t at) {
        std::uint64_t v = 0;
        for (int k = 7; k >= 0; --k) v = (v << 8) | std::uint8_t(b[at + k]);
        return v;
    };
    EXPECT_EQ(u32(4), 1u);
    EXPECT_EQ(u32(8), 2u);
    EXPECT_EQ(u32(12), 3u);
    EXPECT_EQ(u32(16), 2u);
    EXPECT_EQ(u64(20), std::bit_cast<std::uint64_t>(-1.0));
    EXPECT_EQ(u64(28), std::bit_cast<std::uint64_t>(2.0));
    EXPECT_EQ(u64(68 + 8), std::bit_cast<std::uint64_t>(1.0));
    EXPECT_EQ(u64(68 + 88), 0x7ff8000000000000ULL);
}

TEST(Ifld, RoundTripIsBitExact) {
    ScalarField f = sample("1/x+sin(y*z)", GridSpec{-1, 1, -2, 3, 0, 0.3, 5, 6, 7});
    f.values[3] = -0.0;
    f.values[4] = std::bit_cast<double>(0xfff0000000000123ULL);  // a signalling payload
    ScalarField g = from_bytes(to_bytes(f));
    EXPECT_EQ(g.spec, f.spec);
    auto fb = bits(f.values), gb = bits(g.values);
    ASSERT_EQ(fb.size(), gb.size());
    for (std::size_t i = 0; i < fb.size(); ++i) {
        if (std::isnan(f.values[i]))
            EXPECT_EQ(gb[i], 0x7ff8000000000000ULL);
        else
            EXPECT_EQ(gb[i], fb[i]);
    }
    EXPECT_EQ(to_bytes(g), to_bytes(f));
}

TEST(Ifld, ReadErrors) {
    ScalarField f{GridSpec::cube(0, 1, 2), std::vector<double>(8, 1.0)};
    std::string good = to_bytes(f);

    std::string magic = good;
    magic[0] = 'X';
    EXPECT_THROW(from_bytes(magic), IoError);

    std::string version = good;
    version[4] = 2;
    EXPECT_THROW(from_bytes(version), IoError);

    EXPECT_THROW(from_bytes(good.substr(0, good.size() - 1)), IoError);
    EXPECT_THROW(from_bytes(good.substr(0, 30)), IoError);
    EXPECT_THROW(from_bytes(""), IoError);

    std::string huge = good;
    for (int k = 8; k < 20; ++k) huge[k] = char(0xff);
    EXPECT_THROW(from_bytes(huge), IoError);

    std::string flat = good;  // x_min == x_max
    std::memcpy(flat.data() + 28, flat.data() + 20, 8);
    EXPECT_THROW(from_bytes(flat), IoError);
}
