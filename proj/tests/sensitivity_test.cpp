#include <gtest/gtest.h>

#include <random>

#include "implicitforge/parser.hpp"
#include "implicitforge/sensitivity.hpp"

using namespace implicitforge;

namespace {

ScalarField constant_field(GridSpec s, double v) { return {s, std::vector<double>(s.point_count(), v)}; }

ScalarField random_field(std::mt19937_64& rng, GridSpec s, double nan_rate = 0.05) {
    std::uniform_real_distribution<double> d(-1, 1);
    std::bernoulli_distribution undefined(nan_rate);
    ScalarField f{s, std::vector<double>(s.point_count())};
    for (double& v : f.values) v = undefined(rng) ? kUndefined : d(rng);
    return f;
}

// Brute-force count straight from the definition, without the mesher's case index.
std::size_t surface_cells_brute(const ScalarField& f, double iso) {
    std::size_t n = 0;
    const GridSpec& s = f.spec;
    for (std::uint32_t iz = 0; iz + 1 < s.nz; ++iz)
        for (std::uint32_t iy = 0; iy + 1 < s.ny; ++iy)
            for (std::uint32_t ix = 0; ix + 1 < s.nx; ++ix) {
                bool any_nan = false, any_in = false, any_out = false;
                for (int c = 0; c < 8; ++c) {
                    double v = f.at(ix + (c & 1), iy + (c >> 1 & 1), iz + (c >> 2 & 1));
                    any_nan |= std::isnan(v);
                    any_in |= v <= iso;
                    any_out |= v > iso;
                }
                n += !any_nan && any_in && any_out;
            }
    return n;
}

TriangleMesh sphere_mesh(double radius, std::uint32_t n) {
    ScalarField f = sample_field(parse("x^2+y^2+z^2-r^2"), GridSpec::cube(-2.5, 2.5, n), {{"r", radius}});
    return marching_cubes(f);
}

}  // namespace

TEST(SignDistance, Basics) {
    GridSpec s = GridSpec::cube(0, 1, 4);
    std::mt19937_64 rng(1);
    ScalarField f = random_field(rng, s);
    EXPECT_EQ(sign_distance(f, f), 0.0);
    EXPECT_EQ(sign_distance(constant_field(s, 1), constant_field(s, -1)), 1.0);
    EXPECT_EQ(sign_distance(constant_field(s, kUndefined), constant_field(s, kUndefined)), 0.0);
    EXPECT_EQ(sign_distance(constant_field(s, kUndefined), constant_field(s, -1)), 1.0);
}

TEST(SignDistance, BoundsMayDifferButDimensionsMustMatch) {
    ScalarField a = constant_field(GridSpec::cube(0, 1, 4), 1);
    ScalarField b = constant_field(GridSpec::cube(-5, 5, 4), 1);
    EXPECT_EQ(sign_distance(a, b), 0.0);
    EXPECT_THROW(sign_distance(a, constant_field(GridSpec::cube(0, 1, 5), 1)), InvalidArgument);
}

TEST(SignDistance, Pseudometric) {
    std::mt19937_64 rng(2);
    GridSpec s = GridSpec::cube(0, 1, 6);
    for (int t = 0; t < 100; ++t) {
        ScalarField a = random_field(rng, s), b = random_field(rng, s), c = random_field(rng, s);
        double ab = sign_distance(a, b), ba = sign_distance(b, a), bc = sign_distance(b, c), ac = sign_distance(a, c);
        EXPECT_EQ(ab, ba);
        EXPECT_LE(ac, ab + bc + 1e-15);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, 1.0);
    }
}

TEST(SurfaceCells, Examples) {
    EXPECT_EQ(surface_cells(constant_field(GridSpec::cube(0, 1, 5), 1)), 0u);
    ScalarField sphere = sample_field(parse("x^2+y^2+z^2-1"), GridSpec::cube(-1, 1, 3));
    EXPECT_EQ(surface_cells(sphere), 8u);
    EXPECT_EQ(surface_cells_brute(sphere, 0), 8u);
}

TEST(SurfaceCells, ZeroIffEmptyMesh) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> offset(-1.2, 1.2);
    int empties = 0;
    for (int t = 0; t < 200; ++t) {
        ScalarField f = random_field(rng, GridSpec::cube(0, 1, 8), 0.2);
        double iso = offset(rng);
        std::size_t cells = surface_cells(f, iso);
        EXPECT_EQ(cells, surface_cells_brute(f, iso));
        EXPECT_EQ(cells == 0, marching_cubes(f, iso).empty()) << t;
        empties += cells == 0;
    }
    EXPECT_GT(empties, 0);  // both sides of the equivalence get exercised
    EXPECT_LT(empties, 200);
}

TEST(Hausdorff, Examples) {
    TriangleMesh unit = sphere_mesh(1, 41);
    TriangleMesh big = sphere_mesh(2, 41);
    EXPECT_EQ(hausdorff(unit, unit), 0.0);
    double diag = GridSpec::cube(-2.5, 2.5, 41).cell_diagonal();
    EXPECT_NEAR(hausdorff(unit, big), 1.0, 2 * diag);
    EXPECT_EQ(hausdorff(unit, big), hausdorff(big, unit));
    EXPECT_THROW(hausdorff(unit, TriangleMesh{}), InvalidArgument);
}

TEST(Hausdorff, MatchesBruteForce) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> d(-3, 3);
    for (int t = 0; t < 20; ++t) {
        TriangleMesh a, b;
        for (int i = 0; i < 60; ++i) a.vertices.push_back({d(rng), d(rng), d(rng)});
        for (int i = 0; i < 45; ++i) b.vertices.push_back({d(rng), d(rng), d(rng)});
        auto directed = [](const TriangleMesh& p, const TriangleMesh& q) {
            double worst = 0;
            for (const Vec3& u : p.vertices) {
                double best = INFINITY;
                for (const Vec3& v : q.vertices) best = std::min(best, std::hypot(u.x - v.x, u.y - v.y, u.z - v.z));
                worst = std::max(worst, best);
            }
            return worst;
        };
        EXPECT_NEAR(hausdorff(a, b), std::max(directed(a, b), directed(b, a)), 1e-12);
    }
}

TEST(Sweep, ValuesAreFromPlusKStep) {
    EXPECT_EQ(sweep_values(0.25, 1.0, 0.25), (std::vector<double>{0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(sweep_values(0.1, 0.3, 0.1).size(), 3u);
    EXPECT_EQ(sweep_values(1, 1, 0.5), std::vector<double>{1});
    EXPECT_THROW(sweep_values(1, 0, 0.5), InvalidArgument);
    EXPECT_THROW(sweep_values(0, 1, 0), InvalidArgument);
    EXPECT_THROW(sweep_values(0, 1, -1), InvalidArgument);
}

TEST(Sweep, RowsAndMetrics) {
    SceneSpec scene;
    scene.name = "ball";
    scene.expr = parse("x^2+y^2+z^2-r");
    scene.grid = GridSpec::cube(-2, 2, 17);
    scene.params.set("r", 1.0);
    std::vector<double> values{0.5, 1.0, 2.0};
    std::vector<double> seen;
    SweepOptions opts;
    opts.on_mesh = [&](double v, const TriangleMesh& m) {
        seen.push_back(v);
        EXPECT_TRUE(is_watertight(m));
    };
    SweepReport r = sweep(scene, "r", values, opts);
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_EQ(seen, values);
    EXPECT_FALSE(r.rows[0].sign_distance_prev.has_value());
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(r.rows[i].value, values[i]);
        EXPECT_GT(r.rows[i].surface_cells, 0u);
        EXPECT_GT(r.rows[i].mesh_vertices, 0u);
        EXPECT_EQ(r.rows[i].unknown_fraction, 0.0);
        if (i > 0) {
            EXPECT_GT(*r.rows[i].sign_distance_prev, 0.0);
            EXPECT_GT(r.rows[i].inside_fraction, r.rows[i - 1].inside_fraction);
        }
    }
}

TEST(Sweep, Errors) {
    SceneSpec scene = preset("eqC");
    scene.grid = GridSpec::cube(-10, 10, 8);
    std::vector<double> ok{0.25, 0.5};
    EXPECT_THROW(sweep(scene, "q", ok), InvalidArgument);
    std::vector<double> unsorted{0.5, 0.25};
    EXPECT_THROW(sweep(scene, "m", unsorted), InvalidArgument);
    EXPECT_THROW(sweep(scene, "m", std::vector<double>{}), InvalidArgument);
    EXPECT_THROW(sweep(preset("cube-sign"), "m", ok), InvalidArgument);
}

TEST(Sweep, JsonRoundTripAndDeterminism) {
    SceneSpec scene = preset("eqC");
    scene.grid = GridSpec::cube(-10, 10, 20);
    auto values = sweep_values(0.25, 1.0, 0.25);
    std::string first = to_json(sweep(scene, "m", values)).dump(2);
    std::string second = to_json(sweep(scene, "m", values, {3, {}})).dump(2);
    EXPECT_EQ(first, second);
    auto j = nlohmann::json::parse(first);
    EXPECT_EQ(j["rows"][0]["sign_distance_prev"], nullptr);
    std::vector<std::string> keys;
    for (auto it = j["rows"][1].begin(); it != j["rows"][1].end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    EXPECT_EQ(keys, (std::vector<std::string>{"inside_fraction", "mesh_vertices", "sign_distance_prev",
                                              "surface_cells", "unknown_fraction", "value"}));
    SweepReport back = report_from_json(j);
    EXPECT_EQ(to_json(back).dump(2), first);
    EXPECT_THROW(report_from_json(nlohmann::json::parse(R"({"scene": "x"})")), InvalidArgument);
}

TEST(Sweep, EquationBFieldsDiffer) {
    SceneSpec i3 = preset("eqB-I3"), i4 = preset("eqB-I4");
    double d = sign_distance(sample_field(i3.expr, i3.grid), sample_field(i4.expr, i4.grid));
    EXPECT_GT(d, 0.0);
    EXPECT_LE(d, 1.0);
}

// At 82^3 over +-155 the cells are ~3.8 wide and both values classify every point alike;
// the change only shows up on a tighter window.
TEST(Sweep, EquationATwoValues) {
    SceneSpec a = preset("eqA");
    const std::vector<double> m{0.851, 0.861};
    SweepReport r = sweep(a, "m", m);
    ASSERT_EQ(r.rows.size(), 2u);
    for (const SweepRow& row : r.rows) EXPECT_GT(row.surface_cells, 0u);
    ASSERT_TRUE(r.rows[1].sign_distance_prev.has_value());
    EXPECT_EQ(*r.rows[1].sign_distance_prev, 0.0);

    a.grid = GridSpec::cube(-20.0, 20.0, 82);
    SweepReport close = sweep(a, "m", m);
    EXPECT_GT(*close.rows[1].sign_distance_prev, 0.0);
}
