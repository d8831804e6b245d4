#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "support.hpp"
#include "wallindex/charclasses.hpp"
#include "wallindex/fields.hpp"

using namespace wallindex;
using namespace wallindex::testing;

namespace {

using X = std::array<double, Grid::kMaxDim>;
constexpr double kPi = std::numbers::pi;

/// g X g^dagger applied pointwise to every component.
Form conjugate(const Form& a, const Eigen::MatrixXcd& g) {
    Form out(a.grid(), a.degree(), a.value());
    const int r = a.rank();
    for (const auto& [m, data] : a.components()) {
        std::vector<cplx> moved(data.size());
        for (std::size_t p = 0; p < a.grid().size(); ++p) {
            const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                x(&data[p * r * r], r, r);
            Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> y(
                &moved[p * r * r], r, r);
            y = g * x * g.adjoint();
        }
        out.set_component(m, std::move(moved));
    }
    return out;
}

Eigen::MatrixXcd random_unitary(int r, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::MatrixXcd m(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) m(i, j) = cplx(n(rng), n(rng));
    }
    return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

Eigen::MatrixXcd random_rotation(int r, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::MatrixXd m(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) m(i, j) = n(rng);
    }
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
    return q.cast<cplx>();
}

/// Constant u(1) field strength -i (2 pi m / area) dx^a ^ dx^b.
Form flux_quanta(const Grid& g, int a, int b, int m) {
    const double f = kTwoPi * m / (g.length(a) * g.length(b));
    Form out(g, 2, ValueType::gauge(1));
    out.set_component(static_cast<Mask>(bit(a) | bit(b)), std::vector<cplx>(g.size(), cplx(0.0, -f)));
    return out;
}

}  // namespace

TEST(InvariantPolynomial, Normalizations) {
    const auto ch = InvariantPolynomial::chern_character();
    EXPECT_EQ(ch.constant_term(3), cplx(3.0));
    EXPECT_NEAR(ch.coefficient(1).imag(), 1.0 / (2.0 * kPi), 1e-16);
    EXPECT_NEAR(ch.coefficient(2).real(), -1.0 / (8.0 * kPi * kPi), 1e-16);
    const auto ah = InvariantPolynomial::a_hat();
    EXPECT_EQ(ah.constant_term(4), cplx(1.0));
    EXPECT_EQ(ah.coefficient(1), cplx(0.0));
    EXPECT_NEAR(ah.coefficient(2).real(), 1.0 / (192.0 * kPi * kPi), 1e-18);
    EXPECT_EQ(ah.coefficient(3), cplx(0.0));
}

TEST(Curvature, ZeroConnection) {
    const Grid g = Grid::torus(4, 8);
    EXPECT_EQ(curvature(Form(g, 1, ValueType::gauge(2))).max_norm(), 0.0);
}

std::vector<double> field_of(const Grid& g, const std::function<double(const X&)>& f) {
    std::vector<double> out(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) out[p] = f(coords(g, p));
    return out;
}

TEST(Curvature, AbelianSine) {
    const Grid g = Grid::torus(2, 32);
    const double c = 0.8;
    const Form a = abelian_one_form(g, 1, 1, field_of(g, [&](const X& x) { return c * std::sin(x[0]); }));
    const Form f = curvature(a);
    EXPECT_LT(max_error(f, bit(0) | bit(1), [&](const X& x) { return cplx(0.0, -c * std::cos(x[0])); }),
              1e-10);
}

TEST(Curvature, ConstantSu2IsCommutator) {
    const Grid g = Grid::torus(2, 8);
    const ValueType vt = ValueType::gauge(2);
    const auto t = lie_basis(vt);
    const Form a = constant_one_form(g, vt, 0, t[0]) + constant_one_form(g, vt, 1, t[1]);
    const Form f = curvature(a);
    Eigen::Matrix2cd t1, t2;
    t1 << t[0][0], t[0][1], t[0][2], t[0][3];
    t2 << t[1][0], t[1][1], t[1][2], t[1][3];
    const Eigen::Matrix2cd expect = t1 * t2 - t2 * t1;
    const auto c = f.component(bit(0) | bit(1));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) EXPECT_LT(std::abs(c[i * 2 + j] - expect(i, j)), 1e-15);
    }
}

class RandomConnections : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomConnections, Bianchi) {
    std::mt19937_64 rng(GetParam());
    const Grid g = Grid::torus(4, 8);
    for (ValueType vt : {ValueType::gauge(2), ValueType::frame(4)}) {
        const Form a = random_lie_form(g, 1, vt, rng);
        const Form f = curvature(a);
        EXPECT_LT((ext_d(f) + wedge(a, f) - wedge(f, a)).max_norm(), 1e-8);
    }
}

TEST_P(RandomConnections, AdInvariance) {
    std::mt19937_64 rng(GetParam());
    const Grid g = Grid::torus(4, 8);
    const Form f = curvature(random_lie_form(g, 1, ValueType::gauge(2), rng));
    const Form fg = conjugate(f, random_unitary(2, rng));
    EXPECT_LT((chern_character(fg) - chern_character(f)).max_norm(), 1e-10);
    const Form r = curvature(random_lie_form(g, 1, ValueType::frame(4), rng));
    const Form rg = conjugate(r, random_rotation(4, rng));
    EXPECT_LT((a_hat(rg) - a_hat(r)).max_norm(), 1e-10);
}

TEST_P(RandomConnections, ChernTransgressionOnTwoTorus) {
    std::mt19937_64 rng(GetParam());
    const Grid g = Grid::torus(2, 32);
    const ValueType vt = ValueType::gauge(2);
    const Form a1 = random_lie_form(g, 1, vt, rng, 2);
    const Form a0 = random_lie_form(g, 1, vt, rng, 2);
    const MixedForm t = transgression(InvariantPolynomial::chern_character(), a1, a0);
    const MixedForm dch = chern_character(curvature(a1)) - chern_character(curvature(a0));
    EXPECT_LT((ext_d(t) - dch).max_norm(), 1e-8);
}

TEST_P(RandomConnections, TransgressionsOnFourTorus) {
    std::mt19937_64 rng(GetParam());
    const Grid g = Grid::torus(4, 8);
    const Form a1 = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const Form a0 = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const MixedForm tch = transgression(InvariantPolynomial::chern_character(), a1, a0);
    EXPECT_LT((ext_d(tch) - (chern_character(curvature(a1)) - chern_character(curvature(a0)))).max_norm(),
              1e-8);
    const Form g1 = random_lie_form(g, 1, ValueType::frame(4), rng);
    const Form g0 = random_lie_form(g, 1, ValueType::frame(4), rng);
    const MixedForm ta = transgression(InvariantPolynomial::a_hat(), g1, g0);
    EXPECT_LT((ext_d(ta) - (a_hat(curvature(g1)) - a_hat(curvature(g0)))).max_norm(), 1e-8);
    EXPECT_EQ(ta.part(1).max_norm(), 0.0);  // Â has no degree-2 term
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomConnections, ::testing::Values(11u, 12u, 13u));

TEST(ChernCharacter, FlatRankTwoIsTwo) {
    const Grid g = Grid::torus(2, 8);
    const MixedForm ch = chern_character(Form(g, 2, ValueType::gauge(2)));
    EXPECT_LT(std::abs(ch.part(0).component(0)[5] - cplx(2.0)), 1e-15);
    EXPECT_EQ(ch.part(2).max_norm(), 0.0);
}

TEST(ChernCharacter, ThreeFluxQuantaIntegrateToThree) {
    const Grid g({16, 12}, {kTwoPi, 3.0});
    const MixedForm ch = chern_character(flux_quanta(g, 0, 1, 3));
    const cplx c1 = integrate(ch.part(2));
    EXPECT_NEAR(c1.real(), 3.0, 1e-12);
    EXPECT_NEAR(c1.imag(), 0.0, 1e-12);
}

TEST(ChernCharacter, ConstantCommutingFluxesOnFourTorus) {
    const Grid g({8, 8, 10, 8}, {1.0, 2.0, kTwoPi, 1.5});
    for (auto [m1, m2] : {std::pair{1, 1}, std::pair{2, -3}, std::pair{0, 4}}) {
        const Form f = flux_quanta(g, 0, 1, m1) + flux_quanta(g, 2, 3, m2);
        const cplx c2 = integrate(chern_character(f).part(4));
        EXPECT_NEAR(c2.real(), m1 * m2, 1e-11);
        EXPECT_NEAR(c2.imag(), 0.0, 1e-11);
    }
}

TEST(AHat, FlatIsOne) {
    const Grid g = Grid::torus(4, 8);
    const MixedForm ah = a_hat(Form(g, 2, ValueType::frame(4)));
    EXPECT_LT(std::abs(ah.part(0).component(0)[0] - cplx(1.0)), 1e-15);
    EXPECT_EQ(ah.part(2).max_norm(), 0.0);
    EXPECT_EQ(ah.part(4).max_norm(), 0.0);
}

TEST(AHat, TwoDimensionsHasOnlyTheConstant) {
    std::mt19937_64 rng(5);
    const Grid g = Grid::torus(2, 12);
    const MixedForm ah = a_hat(curvature(random_lie_form(g, 1, ValueType::frame(2), rng)));
    EXPECT_EQ(ah.part(2).max_norm(), 0.0);
}

TEST(AHat, RejectsGaugeValues) {
    const Grid g = Grid::torus(2, 8);
    EXPECT_THROW(a_hat(Form(g, 2, ValueType::gauge(2))), std::invalid_argument);
}

TEST(Pontryagin, Trivial) {
    const Grid g = Grid::torus(4, 8);
    const MixedForm p = pontryagin_density(Form(g, 2, ValueType::frame(4)), Form(g, 2, ValueType::gauge(3)));
    EXPECT_LT(std::abs(p.part(0).component(0)[0] - cplx(3.0)), 1e-15);
    EXPECT_EQ(p.part(4).max_norm(), 0.0);
}

TEST(Pontryagin, FlatFrameInTwoDimensionsIsChernCharacter) {
    std::mt19937_64 rng(8);
    const Grid g = Grid::torus(2, 12);
    const Form f = curvature(random_lie_form(g, 1, ValueType::gauge(2), rng));
    const MixedForm p = pontryagin_density(Form(g, 2, ValueType::frame(2)), f);
    EXPECT_LT((p.part(2) - chern_character(f).part(2)).max_norm(), 1e-15);
}

TEST(Pontryagin, FluxOnFourTorusMatchesSecondChernCharacter) {
    const Grid g = Grid::torus(4, 8);
    const Form f = flux_quanta(g, 0, 1, 2) + flux_quanta(g, 2, 3, 1);
    const cplx p = integrate(pontryagin_density(Form(g, 2, ValueType::frame(4)), f).part(4));
    EXPECT_NEAR(p.real(), integrate(chern_character(f).part(4)).real(), 1e-12);
    EXPECT_NEAR(p.real(), 2.0, 1e-11);
}

TEST(Polarization, DiagonalIsThePolynomial) {
    std::mt19937_64 rng(21);
    const Grid g = Grid::torus(4, 8);
    const auto ch = InvariantPolynomial::chern_character();
    const Form f = curvature(random_lie_form(g, 1, ValueType::gauge(2), rng));
    const Form args[] = {f, f};
    EXPECT_LT((polarization_eval(ch, 2, args) - chern_character(f).part(4)).max_norm(), 1e-14);
    const Form one[] = {f};
    EXPECT_LT((polarization_eval(ch, 1, one) - chern_character(f).part(2)).max_norm(), 1e-14);
}

TEST(Polarization, LinearInTheFirstOrderSlot) {
    std::mt19937_64 rng(22);
    const Grid g = Grid::torus(2, 8);
    const auto ch = InvariantPolynomial::chern_character();
    const Form eta = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const Form a[] = {eta};
    const Form b[] = {2.0 * eta};
    EXPECT_LT((polarization_eval(ch, 1, b) - 2.0 * polarization_eval(ch, 1, a)).max_norm(), 1e-15);
}

TEST(Polarization, AbelianSecondOrderAtOnePoint) {
    std::mt19937_64 rng(23);
    const Grid g = Grid::torus(4, 8);
    const auto ch = InvariantPolynomial::chern_character();
    const Form eta = random_lie_form(g, 1, ValueType::gauge(1), rng);
    const Form f = curvature(random_lie_form(g, 1, ValueType::gauge(1), rng));
    const Form ef[] = {eta, f};
    const Form fe[] = {f, eta};
    const Form v = polarization_eval(ch, 2, ef);
    EXPECT_LT((v - polarization_eval(ch, 2, fe)).max_norm(), 1e-15);
    // explicit oracle at one point: c2 * (eta_mu F_nr) over the 3-form basis
    const std::size_t p = 123;
    for (const auto& [mask, data] : v.components()) {
        cplx expect{};
        for (int mu = 0; mu < 4; ++mu) {
            if (!(mask & bit(mu))) continue;
            const Mask rest = static_cast<Mask>(mask & ~bit(mu));
            const auto e = eta.component(bit(mu));
            const auto fc = f.component(rest);
            if (e.empty() || fc.empty()) continue;
            expect += static_cast<double>(merge_sign(bit(mu), rest)) * e[p] * fc[p];
        }
        EXPECT_LT(std::abs(data[p] - ch.coefficient(2) * expect), 1e-15);
    }
}

TEST(Polarization, RejectsBadArity) {
    const Grid g = Grid::torus(2, 8);
    const Form f(g, 2, ValueType::gauge(1));
    const Form one[] = {f};
    EXPECT_THROW(polarization_eval(InvariantPolynomial::chern_character(), 2, one), std::invalid_argument);
    EXPECT_THROW(polarization_eval(InvariantPolynomial::chern_character(), 3, one), std::invalid_argument);
}

TEST(Transgression, EqualConnectionsGiveZero) {
    std::mt19937_64 rng(31);
    const Grid g = Grid::torus(4, 8);
    const Form a = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const MixedForm t = transgression(InvariantPolynomial::chern_character(), a, a);
    EXPECT_LT(t.max_norm(), 1e-15);
}

TEST(Transgression, AbelianFirstOrderIsTheTraceOfTheDifference) {
    std::mt19937_64 rng(32);
    const Grid g = Grid::torus(2, 16);
    const Form a1 = random_lie_form(g, 1, ValueType::gauge(1), rng, 2);
    const Form a0 = random_lie_form(g, 1, ValueType::gauge(1), rng, 2);
    const auto ch = InvariantPolynomial::chern_character();
    // independent oracle: c1 tr(A1 - A0), component by component
    const MixedForm t = transgression(ch, a1, a0, 4);
    const Form diff = a1 - a0;
    const Form t1 = t.part(1);
    for (int mu = 0; mu < 2; ++mu) {
        const auto got = t1.component(bit(mu));
        const auto d = diff.component(bit(mu));
        for (std::size_t p = 0; p < g.size(); ++p) {
            EXPECT_LT(std::abs(got[p] - ch.coefficient(1) * d[p]), 1e-15);
        }
    }
}

TEST(Transgression, IndependentOfQuadratureOrder) {
    std::mt19937_64 rng(33);
    const Grid g = Grid::torus(4, 8);
    const Form a1 = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const Form a0 = random_lie_form(g, 1, ValueType::gauge(2), rng);
    const auto ch = InvariantPolynomial::chern_character();
    EXPECT_LT((transgression(ch, a1, a0, 2) - transgression(ch, a1, a0, 24)).max_norm(), 1e-12);
}

TEST(Transgression, RejectsMismatchedValues) {
    const Grid g = Grid::torus(2, 8);
    EXPECT_THROW(transgression(InvariantPolynomial::chern_character(), Form(g, 1, ValueType::gauge(2)),
                               Form(g, 1, ValueType::gauge(1))),
                 std::invalid_argument);
}
