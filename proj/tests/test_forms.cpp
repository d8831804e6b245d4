#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wallindex/fields.hpp"
#include "wallindex/form.hpp"

using namespace wallindex;
using namespace wallindex::testing;

namespace {

using X = std::array<double, Grid::kMaxDim>;

Form unit_one_form(const Grid& g, int axis) {
    return sampled(g, 1, bit(axis), [](const X&) { return cplx(1.0); });
}

}  // namespace

TEST(Grid, RejectsInvalidShapes) {
    EXPECT_THROW(Grid::torus(3, 8), std::invalid_argument);
    EXPECT_THROW(Grid::torus(2, 7), std::invalid_argument);
    EXPECT_THROW(Grid::torus(2, 6), std::invalid_argument);
    EXPECT_THROW(Grid::torus(2, 8, -1.0), std::invalid_argument);
    EXPECT_THROW(Grid::torus(2, 8, kTwoPi, 2), std::invalid_argument);
    EXPECT_THROW(Grid::torus(2, 8, kTwoPi, 0, 8), std::invalid_argument);
    EXPECT_THROW(Grid::torus(2, 8, kTwoPi, 0, 0, 0), std::invalid_argument);
}

TEST(Grid, FlattenRoundTripsAndWallGridDropsTheWallAxis) {
    const Grid g({8, 10, 12, 14}, {1.0, 2.0, 3.0, 4.0}, 2, 5, -1);
    for (std::size_t p : {std::size_t{0}, std::size_t{17}, g.size() - 1}) {
        EXPECT_EQ(g.flatten(g.unflatten(p)), p);
    }
    const Grid w = g.wall_grid();
    EXPECT_EQ(w.dim(), 3);
    EXPECT_EQ(w.points(0), 8);
    EXPECT_EQ(w.points(1), 10);
    EXPECT_EQ(w.points(2), 14);
    EXPECT_TRUE(w.is_wall_grid());
    EXPECT_FALSE(w.has_wall());
    EXPECT_EQ(w.orientation(), -1);  // axis 2 is even
    EXPECT_EQ(Grid::torus(2, 8, 1.0, 1).wall_grid().orientation(), -1);
}

TEST(Grid, FourierMatrixDifferentiatesBandLimitedData) {
    const int n = 16;
    const double len = 3.0;
    const auto d = fourier_diff_matrix(n, len);
    const double k = kTwoPi * 3 / len;
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += d[j * n + i] * std::sin(k * i * len / n);
        EXPECT_NEAR(acc, k * std::cos(k * j * len / n), 1e-11);
    }
}

TEST(Forms, MergeSign) {
    EXPECT_EQ(merge_sign(bit(0), bit(1)), 1);
    EXPECT_EQ(merge_sign(bit(1), bit(0)), -1);
    EXPECT_EQ(merge_sign(bit(0), bit(0)), 0);
    EXPECT_EQ(merge_sign(bit(2), bit(0) | bit(1)), 1);
    EXPECT_EQ(merge_sign(bit(1), bit(0) | bit(2)), -1);
    EXPECT_EQ(mask_degree(bit(0) | bit(3)), 2);
}

TEST(Forms, CoefficientAppliesReorderingSign) {
    const Grid g = Grid::torus(2, 8);
    const Form f = sampled(g, 2, bit(0) | bit(1), [](const X&) { return cplx(2.5); });
    const int fwd[] = {0, 1};
    const int rev[] = {1, 0};
    const int rep[] = {0, 0};
    EXPECT_EQ(f.coefficient(fwd, 3), cplx(2.5));
    EXPECT_EQ(f.coefficient(rev, 3), cplx(-2.5));
    EXPECT_EQ(f.coefficient(rep, 3), cplx(0.0));
}

TEST(Forms, WedgeOfCoordinateDifferentials) {
    const Grid g = Grid::torus(2, 8);
    const Form w = wedge(unit_one_form(g, 0), unit_one_form(g, 1));
    EXPECT_EQ(w.degree(), 2);
    EXPECT_LT(max_error(w, bit(0) | bit(1), [](const X&) { return cplx(1.0); }), 1e-15);
}

TEST(Forms, ScalarOneFormWedgesToZero) {
    const Grid g = Grid::torus(2, 12);
    std::mt19937_64 rng(3);
    const Form a = random_scalar_form(g, 1, rng);
    EXPECT_EQ(wedge(a, a).max_norm(), 0.0);
}

TEST(Forms, ConstantSu2WedgeIsCommutator) {
    const Grid g = Grid::torus(2, 8);
    const auto basis = lie_basis(ValueType::gauge(2));
    const ValueType vt = ValueType::gauge(2);
    const Form a = constant_one_form(g, vt, 0, basis[0]) + constant_one_form(g, vt, 1, basis[1]);
    const Form f = wedge(a, a);
    // independent single-point oracle: T1 T2 - T2 T1 with Eigen
    Eigen::Matrix2cd t1, t2;
    t1 << basis[0][0], basis[0][1], basis[0][2], basis[0][3];
    t2 << basis[1][0], basis[1][1], basis[1][2], basis[1][3];
    const Eigen::Matrix2cd expect = t1 * t2 - t2 * t1;
    const auto c = f.component(bit(0) | bit(1));
    ASSERT_EQ(c.size(), g.size() * 4);
    for (std::size_t p = 0; p < g.size(); p += 7) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) EXPECT_LT(std::abs(c[p * 4 + i * 2 + j] - expect(i, j)), 1e-15);
        }
    }
}

TEST(Forms, ExteriorDerivativeOfSineIsCosine) {
    const Grid g = Grid::torus(2, 32);
    const Form a = sampled(g, 1, bit(1), [](const X& x) { return cplx(std::sin(x[0])); });
    const Form da = ext_d(a);
    EXPECT_LT(max_error(da, bit(0) | bit(1), [](const X& x) { return cplx(std::cos(x[0])); }), 1e-10);
}

TEST(Forms, ExteriorDerivativeOfConstantVanishes) {
    const Grid g = Grid::torus(4, 8);
    EXPECT_LT(ext_d(constant_form(g, 3.0)).max_norm(), 1e-13);
}

TEST(Forms, ExteriorDerivativeThrowsOnTopDegree) {
    const Grid g = Grid::torus(2, 8);
    EXPECT_THROW(ext_d(Form(g, 2, ValueType::scalar())), std::invalid_argument);
}

class RandomForms : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomForms, DSquaredVanishes) {
    std::mt19937_64 rng(GetParam());
    const Grid g2 = Grid::torus(2, 16);
    EXPECT_LT(ext_d(ext_d(random_scalar_form(g2, 0, rng, 3))).max_norm(), 1e-10);
    const Grid g4 = Grid::torus(4, 8);
    EXPECT_LT(ext_d(ext_d(random_scalar_form(g4, 1, rng))).max_norm(), 1e-10);
    EXPECT_LT(ext_d(ext_d(random_lie_form(g4, 1, ValueType::gauge(2), rng))).max_norm(), 1e-10);
}

TEST_P(RandomForms, StokesOnClosedTorus) {
    std::mt19937_64 rng(GetParam());
    const Grid g2 = Grid::torus(2, 16, 1.7);
    EXPECT_LT(std::abs(integrate(ext_d(random_scalar_form(g2, 1, rng, 3)))), 1e-8);
    const Grid g4({8, 10, 8, 12}, {1.0, 2.0, 3.0, 4.0});
    EXPECT_LT(std::abs(integrate(ext_d(random_scalar_form(g4, 3, rng)))), 1e-8);
}

TEST_P(RandomForms, GradedLeibniz) {
    std::mt19937_64 rng(GetParam());
    const Grid g = Grid::torus(4, 8);
    const Form a = random_scalar_form(g, 1, rng);
    const Form b = random_scalar_form(g, 1, rng);
    // d(a ^ b) = da ^ b - a ^ db for a 1-form a
    const Form lhs = ext_d(wedge(a, b));
    const Form rhs = wedge(ext_d(a), b) - wedge(a, ext_d(b));
    EXPECT_LT((lhs - rhs).max_norm(), 1e-9);
}

TEST_P(RandomForms, GradedCommutativity) {
    std::mt19937_64 rng(GetParam());
    const Grid g = Grid::torus(4, 8);
    const Form a = random_scalar_form(g, 1, rng);
    const Form b = random_scalar_form(g, 2, rng);
    const Form c = random_scalar_form(g, 1, rng);
    EXPECT_LT((wedge(a, b) - wedge(b, a)).max_norm(), 1e-13);
    EXPECT_LT((wedge(a, c) + wedge(c, a)).max_norm(), 1e-13);
    // associativity
    EXPECT_LT((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_norm(), 1e-12);
}

TEST_P(RandomForms, HalfDomainsAddUpToTheTorus) {
    std::mt19937_64 rng(GetParam());
    const Grid g({16, 12}, {kTwoPi, 2.0}, 0, 5);
    const Form top = random_scalar_form(g, 2, rng, 2);
    const cplx halves = integrate(top, Domain::half_plus) + integrate(top, Domain::half_minus);
    EXPECT_LT(std::abs(halves - integrate(top)), 1e-12);
}

TEST_P(RandomForms, TraceOfWedgeMatchesTraceOfProduct) {
    std::mt19937_64 rng(GetParam());
    const Grid g = Grid::torus(4, 8);
    const Form a = random_lie_form(g, 1, ValueType::frame(4), rng);
    const Form b = random_lie_form(g, 2, ValueType::frame(4), rng);
    EXPECT_LT((trace_wedge(a, b) - trace(wedge(a, b))).max_norm(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomForms, ::testing::Values(1u, 2u, 3u, 4u, 5u));

TEST(Integrate, VolumeAndMeanZero) {
    const Grid g = Grid::torus(2, 16);
    const Form vol = sampled(g, 2, bit(0) | bit(1), [](const X&) { return cplx(1.0); });
    EXPECT_NEAR(integrate(vol).real(), kTwoPi * kTwoPi, 1e-12);
    const Form c = sampled(g, 2, bit(0) | bit(1), [](const X& x) { return cplx(std::cos(x[0])); });
    EXPECT_LT(std::abs(integrate(c)), 1e-12);
}

TEST(Integrate, OrientationFlipsSign) {
    const Grid g = Grid::torus(2, 8, 1.0, 0, 0, -1);
    const Form vol = sampled(g, 2, bit(0) | bit(1), [](const X&) { return cplx(1.0); });
    EXPECT_NEAR(integrate(vol).real(), -1.0, 1e-14);
}

TEST(Integrate, RejectsWrongDegree) {
    const Grid g = Grid::torus(2, 8);
    EXPECT_THROW(integrate(Form(g, 1, ValueType::scalar())), std::invalid_argument);
}

TEST(Restrict, ConstantOnCircleIntegratesToCircumferenceTimesValue) {
    const Grid g = Grid::torus(2, 8, kTwoPi, 0, 3);
    const double c = 0.7;
    const Form a = sampled(g, 1, bit(1), [&](const X&) { return cplx(c); });
    const Form r = restrict_to_wall(a);
    EXPECT_EQ(r.grid().dim(), 1);
    EXPECT_NEAR(integrate(r, Domain::wall).real(), kTwoPi * c, 1e-12);
}

TEST(Restrict, DropsNormalComponentAndSamplesTheWallPlane) {
    const Grid g = Grid::torus(2, 16, kTwoPi, 0, 4);
    const Form normal = sampled(g, 1, bit(0), [](const X& x) { return cplx(std::sin(x[0] + x[1])); });
    EXPECT_TRUE(restrict_to_wall(normal).is_zero());
    const auto f = [](const X& x) { return cplx(std::cos(x[0]) * std::sin(2 * x[1])); };
    const Form tangential = sampled(g, 1, bit(1), f);
    const Form r = restrict_to_wall(tangential);
    const double s0 = g.wall_position();
    const Grid wg = g.wall_grid();
    const auto c = r.component(bit(0));
    for (int j = 0; j < wg.points(0); ++j) {
        EXPECT_LT(std::abs(c[j] - f({s0, wg.coord(0, j), 0, 0})), 1e-14);
    }
}

TEST(Restrict, WallAxisOneUsesTheOtherCoordinate) {
    const Grid g = Grid::torus(2, 8, kTwoPi, 1, 2);
    const Form a = sampled(g, 1, bit(0), [](const X& x) { return cplx(x[1]); });
    const Form r = restrict_to_wall(a);
    for (std::size_t p = 0; p < r.grid().size(); ++p) {
        EXPECT_NEAR(r.component(bit(0))[p].real(), g.wall_position(), 1e-14);
    }
}

TEST(PermuteAxes, SwapsComponentsWithSign) {
    const Grid g = Grid::torus(2, 8);
    const Form vol = sampled(g, 2, bit(0) | bit(1), [](const X&) { return cplx(1.0); });
    const int swap[] = {1, 0};
    const Form p = permute_axes(vol, swap);
    EXPECT_LT(max_error(p, bit(0) | bit(1), [](const X&) { return cplx(-1.0); }), 1e-15);
}

TEST(Forms, MismatchedGridsAreRejected) {
    const Form a(Grid::torus(2, 8), 1, ValueType::scalar());
    const Form b(Grid::torus(2, 10), 1, ValueType::scalar());
    EXPECT_THROW(a + b, std::invalid_argument);
    EXPECT_THROW(wedge(a, b), std::invalid_argument);
    const Form top(Grid::torus(2, 8), 2, ValueType::scalar());
    EXPECT_THROW(wedge(a, top), std::invalid_argument);
}
