#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "implicitforge/constituents.hpp"
#include "implicitforge/eval.hpp"
#include "support/closed_form.hpp"

using namespace implicitforge;

namespace {

double at(const Expr& e, double x) { return evaluate(e, x, 0, 0); }

// Distance from x to the nearest multiple of step.
double knot_gap(double x, double step) {
    double q = x / step;
    return std::fabs(q - std::round(q)) * step;
}

}  // namespace

TEST(PiecewiseLinear, IdentityLine) {
    EXPECT_DOUBLE_EQ(at(piecewise_linear({{0, 0}, {1, 1}}), 0.5), 0.5);
}

TEST(PiecewiseLinear, ReproducesChordsAndIsUndefinedAtKnots) {
    Expr e = piecewise_linear({{0, 1}, {2, 5}, {3, -1}, {7, 0}});
    EXPECT_NEAR(at(e, 1.0), 3.0, 1e-14);
    EXPECT_NEAR(at(e, 2.5), 2.0, 1e-14);
    EXPECT_NEAR(at(e, 5.0), -0.5, 1e-14);
    EXPECT_EQ(at(e, 8.0), 0.0);
    for (double k : {0.0, 2.0, 3.0, 7.0}) EXPECT_TRUE(is_undefined(at(e, k))) << k;
}

TEST(PiecewiseLinear, RejectsBadKnots) {
    EXPECT_THROW(piecewise_linear({{0, 0}}), InvalidArgument);
    EXPECT_THROW(piecewise_linear({{0, 0}, {0, 1}}), InvalidArgument);
    EXPECT_THROW(piecewise_linear({{1, 0}, {0, 1}}), InvalidArgument);
}

// Hand evaluation of the printed two-part curve at each piece midpoint. Inside (a, b)
// a gate term is 2 and a bare ratio term is -1; outside they are 0 and +1. The
// constant 6 - ratio(7,9) - 5 ratio(10,10.5) is 0 left of 7.
TEST(FigureCurve, MidpointsMatchHandTable) {
    struct Row {
        double x, value;
    };
    const Row table[] = {{1.5, 0.5}, {2.5, 2.0}, {3.5, 4.5},   {4.5, 4.0},
                         {6.0, 7.5}, {8.0, 1.0}, {9.5, 0.5}, {10.25, 5.0}};
    Expr f = figure_curve();
    for (const Row& r : table) EXPECT_NEAR(at(f, r.x), r.value, 1e-12) << r.x;
}

TEST(FigureCurve, UndefinedAtKnotsZeroOutside) {
    Expr f = figure_curve();
    for (double k : {1.0, 2.0, 3.0, 4.0, 5.0, 7.0, 9.0, 10.0, 10.5}) EXPECT_TRUE(is_undefined(at(f, k))) << k;
    EXPECT_EQ(at(f, 0.5), 0.0);
    EXPECT_EQ(at(f, 11.0), 0.0);
}

TEST(Sawtooth, Examples) {
    EXPECT_NEAR(at(sawtooth(SawtoothForm::sum, 1, 2), 0.25), 0.25, 1e-15);
    EXPECT_NEAR(at(sawtooth(SawtoothForm::trig, 1), 0.6), 0.6, 1e-15);
    EXPECT_TRUE(is_undefined(at(sawtooth(SawtoothForm::sum, 1, 2), 0)));
    EXPECT_TRUE(is_undefined(at(sawtooth(SawtoothForm::trig, 1), 0)));
}

TEST(Triangular, Examples) {
    EXPECT_NEAR(at(triangular(TriangularForm::acos, 4), 1), 0.5, 1e-15);
    EXPECT_EQ(at(triangular(TriangularForm::acos, 4), 0), 0.0);
    EXPECT_NEAR(at(triangular(TriangularForm::arccot, 4), 1), 0.5, 1e-15);
}

TEST(Staircase, Examples) {
    EXPECT_NEAR(at(staircase(StaircaseForm::trig, 1, 1), 2.3), 2.0, 1e-14);
    EXPECT_NEAR(at(staircase(StaircaseForm::trig, 1, 1), 0.5), 0.0, 1e-15);
    EXPECT_NEAR(at(staircase(StaircaseForm::trig, 2, 0.5), 1.26), 4.0, 1e-14);
    EXPECT_NEAR(at(staircase(StaircaseForm::sum, 2, 0.5, 3), 1.26), 4.0, 1e-14);
}

TEST(Rectangular, Examples) {
    Expr s = rectangular(RectangularForm::sign, 0);
    EXPECT_EQ(at(s, 0.5), 0.0);
    EXPECT_EQ(at(s, 1.5), 1.0);
    Expr a = rectangular(RectangularForm::arccot, 0.5, 2);
    EXPECT_NEAR(at(a, 0.2), 0.0, 1e-14);
    EXPECT_NEAR(at(a, 1.7), 1.0, 1e-14);
    EXPECT_NEAR(at(rectangular(RectangularForm::ratio, 0.5), 0.25), -1.0, 1e-14);
}

TEST(Rectangular, SideConditions) {
    EXPECT_THROW(rectangular(RectangularForm::sign, 1.0), InvalidArgument);
    EXPECT_THROW(rectangular(RectangularForm::sign, -1.5), InvalidArgument);
    EXPECT_THROW(rectangular(RectangularForm::arccot, 2.0, 1.0), InvalidArgument);
    EXPECT_THROW(rectangular(RectangularForm::arccot, 1.0, 0.5), InvalidArgument);
    EXPECT_THROW(rectangular(RectangularForm::ratio, 3.0), InvalidArgument);
    EXPECT_NO_THROW(rectangular(RectangularForm::arccot, 0.5, 2.0));
}

TEST(Pulse, RejectsBadParameters) {
    EXPECT_THROW(sawtooth(SawtoothForm::sum, 0, 1), InvalidArgument);
    EXPECT_THROW(sawtooth(SawtoothForm::sum, 1, 0), InvalidArgument);
    EXPECT_THROW(triangular(TriangularForm::acos, -2), InvalidArgument);
    EXPECT_THROW(staircase(StaircaseForm::trig, NAN, 1), InvalidArgument);
}

TEST(PowerSum, Examples) {
    Expr sphere = power_sum({{1, 2, 0, 0}, {1, 0, 2, 0}, {1, 0, 0, 2}});
    EXPECT_EQ(evaluate(sphere, 1, 2, 3), 14.0);
    EXPECT_EQ(power_sum({}), Expr::constant(0));
    PowerTerm t{1, 3.3, 0, 0, true};
    double v = evaluate(power_sum({t}), -2, 0, 0);
    EXPECT_NEAR(v, 9.849155306759329, 1e-12);
    EXPECT_NEAR(v, std::exp(3.3 * std::log(2.0)), 1e-12);
}

TEST(PowerSum, Structure) {
    EXPECT_EQ(power_sum({{2.5, 0, 0, 0}}), Expr::constant(2.5));
    EXPECT_EQ(power_sum({{1, 1, 1, 0}}), fn::x() * fn::y());
    EXPECT_EQ(power_sum({{-3, 0, 2, 0, true}}), Expr::constant(-3) * fn::pow(fn::abs(fn::y()), 2.0));
    EXPECT_THROW(power_sum({{1, INFINITY, 0, 0}}), InvalidArgument);
}

// Cross-form identities on a modest sample; the acceptance binary runs the full-size suite.
class PulseIdentity : public ::testing::TestWithParam<double> {};

TEST_P(PulseIdentity, FormsAgreeOffKnots) {
    const double r = GetParam();
    const int p = 4;
    Expr saw_sum = sawtooth(SawtoothForm::sum, r, p), saw_trig = sawtooth(SawtoothForm::trig, r);
    Expr tri_sum = triangular(TriangularForm::sum, r, p), tri_cot = triangular(TriangularForm::arccot, r);
    Expr tri_acos = triangular(TriangularForm::acos, r);
    Expr st_sum = staircase(StaircaseForm::sum, 1.5, r, p), st_trig = staircase(StaircaseForm::trig, 1.5, r);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-(p + 1) * r, p * r);
    for (int n = 0; n < 2000;) {
        double x = dist(rng);
        if (knot_gap(x, r / 2) < 1e-6) continue;
        ++n;
        EXPECT_NEAR(at(saw_sum, x), closed_form::sawtooth(x, r), 1e-9) << x;
        EXPECT_NEAR(at(saw_sum, x), at(saw_trig, x), 1e-9) << x;
        EXPECT_NEAR(at(tri_sum, x), at(tri_cot, x), 1e-9) << x;
        EXPECT_NEAR(at(tri_cot, x), closed_form::triangular_valley(x, r), 1e-9) << x;
        EXPECT_NEAR(at(tri_acos, x), at(tri_cot, x + r / 2), 1e-9) << x;
        EXPECT_NEAR(at(st_sum, x), at(st_trig, x), 1e-9) << x;
        EXPECT_NEAR(at(st_trig, x), closed_form::staircase(x, 1.5, r), 1e-9) << x;
    }
}

INSTANTIATE_TEST_SUITE_P(Bases, PulseIdentity, ::testing::Values(0.5, 1.0, 2.0));

TEST(Rectangular, MatchesClosedForms) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-10, 10);
    Expr s = rectangular(RectangularForm::sign, 0.3);
    Expr a = rectangular(RectangularForm::arccot, 0.5, 2);
    Expr q = rectangular(RectangularForm::ratio, 0.25);
    for (int n = 0; n < 2000; ++n) {
        double x = dist(rng);
        if (knot_gap(x, 0.5) > 1e-6 && knot_gap(x + 0.25, 0.5) > 1e-6) {
            EXPECT_NEAR(at(q, x), closed_form::rectangular_ratio(x, 0.25), 1e-9) << x;
        }
        if (knot_gap(x, 2) > 1e-6 && knot_gap(x + 0.5, 2) > 1e-6) {
            EXPECT_NEAR(at(a, x), closed_form::rectangular_arccot(x, 0.5, 2), 1e-9) << x;
        }
        if (std::fabs(std::sin(std::numbers::pi * x) + 0.3) > 1e-6) {
            EXPECT_EQ(at(s, x), closed_form::rectangular_sign(x, 0.3)) << x;
        }
    }
}
