#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "wallindex/eta.hpp"
#include "wallindex/fields.hpp"

using namespace wallindex;

namespace {

// Reference values from tests/oracles/eta_circle.py (Hurwitz zeta at s = 0
// and holonomy eigenphases).
constexpr double kEtaConstant[][2] = {
    {0.1, 0.8}, {0.25, 0.5}, {0.4, 0.2}, {0.75, -0.5}, {1.25, 0.5}, {-0.3, -0.4},
};
constexpr double kEtaLengthThree = 0.7135211024345884;  // a = 0.3, L = 3
constexpr double kEtaRankTwo = -0.4;
constexpr double kEtaSineProfile = 0.6;

CircleProfile sampled_profile(int rank, int points, double length,
                              const std::function<std::vector<cplx>(double)>& a) {
    CircleProfile p{length, rank, {}};
    for (int j = 0; j < points; ++j) {
        const auto m = a(j * length / points);
        p.samples.insert(p.samples.end(), m.begin(), m.end());
    }
    return p;
}

}  // namespace

TEST(EtaCircle, SymmetricSpectrumAtOneHalf) {
    const EtaResult r = eta_circle_spectral(CircleProfile::constant(0.5));
    EXPECT_NEAR(r.value, 0.0, 1e-8);
    EXPECT_EQ(r.kernel_dimension, 0);
}

TEST(EtaCircle, ConstantPotentialsMatchTheZetaOracle) {
    for (const auto& [a, eta] : kEtaConstant) {
        EXPECT_NEAR(eta_circle_spectral(CircleProfile::constant(a)).value, eta, 1e-4) << "a=" << a;
    }
}

TEST(EtaCircle, ExtrapolationIsMuchTighterThanTheOracleTolerance) {
    for (double a : {0.1, 0.25, 0.4}) {
        const EtaResult r = eta_circle_spectral(CircleProfile::constant(a));
        EXPECT_NEAR(r.value, 1.0 - 2.0 * a, 1e-8);
        EXPECT_LT(r.extrapolation_error, 1e-6);
    }
}

TEST(EtaCircle, IntegerShiftLeavesEtaUnchanged) {
    const double e0 = eta_circle_spectral(CircleProfile::constant(0.3)).value;
    EXPECT_NEAR(eta_circle_spectral(CircleProfile::constant(1.3)).value, e0, 1e-8);
    EXPECT_NEAR(eta_circle_spectral(CircleProfile::constant(-0.7)).value, e0, 1e-8);
}

TEST(EtaCircle, IntegerPotentialHasOneKernelModeAndZeroEta) {
    const EtaResult r = eta_circle_spectral(CircleProfile::constant(2.0));
    EXPECT_EQ(r.kernel_dimension, 1);
    EXPECT_NEAR(r.value, 0.0, 1e-8);
}

TEST(EtaCircle, CircumferenceEntersThroughTheHolonomy) {
    EXPECT_NEAR(eta_circle_spectral(CircleProfile::constant(0.3, 16, 3.0)).value, kEtaLengthThree, 1e-6);
}

TEST(EtaCircle, VaryingRankOneProfileDependsOnlyOnItsMean) {
    const auto p = sampled_profile(1, 16, kTwoPi, [](double t) {
        return std::vector<cplx>{0.2 + 0.3 * std::sin(t)};
    });
    EXPECT_NEAR(eta_circle_spectral(p).value, kEtaSineProfile, 1e-6);
}

TEST(EtaCircle, RankTwoProfileMatchesTheHolonomyOracle) {
    const auto p = sampled_profile(2, 16, kTwoPi, [](double t) {
        const cplx off = 0.15 * std::polar(1.0, t);
        return std::vector<cplx>{0.3 + 0.2 * std::cos(t), off, std::conj(off),
                                 -0.1 + 0.1 * std::sin(t) + 0.05 * std::cos(2 * t)};
    });
    EXPECT_NEAR(eta_circle_spectral(p).value, kEtaRankTwo, 1e-6);
}

TEST(EtaCircle, RejectsBadInput) {
    EXPECT_THROW(eta_circle_spectral(CircleProfile{kTwoPi, 2, std::vector<cplx>(6)}), std::invalid_argument);
    EtaOptions low;
    low.cutoff = 16;
    EXPECT_THROW(eta_circle_spectral(CircleProfile::constant(0.1), low), std::invalid_argument);
}

TEST(EtaCircle, ConvergenceFailureIsReported) {
    EtaOptions strict;
    strict.convergence_tol = 1e-30;
    EXPECT_THROW(eta_circle_spectral(CircleProfile::constant(0.1), strict), ConvergenceError);
}

TEST(Seeley, EqualEndpointsGiveZero) {
    const auto a = CircleProfile::constant(0.2);
    EXPECT_EQ(eta_relative_seeley_1d(straight_line_family(a, a)), 0.0);
}

TEST(Seeley, ConstantJumpGivesMinusTwiceTheJump) {
    for (double c : {0.1, 0.35, -0.2}) {
        const auto fam = straight_line_family(CircleProfile::constant(0.1), CircleProfile::constant(0.1 + c));
        EXPECT_NEAR(eta_relative_seeley_1d(fam), -2.0 * c, 1e-13);
    }
}

TEST(Seeley, MatchesTheSpectralDifferenceWithoutZeroCrossings) {
    for (auto [lo, hi] : {std::pair{0.1, 0.4}, std::pair{0.25, 0.45}, std::pair{0.05, 0.9}}) {
        const auto a0 = CircleProfile::constant(lo);
        const auto a1 = CircleProfile::constant(hi);
        const double spectral = eta_circle_spectral(a1).value - eta_circle_spectral(a0).value;
        EXPECT_NEAR(eta_relative_seeley_1d(straight_line_family(a0, a1)), spectral, 1e-3);
    }
}

TEST(Seeley, ReparametrizationInvariant) {
    const auto a0 = sampled_profile(1, 16, kTwoPi, [](double t) { return std::vector<cplx>{0.1 * std::cos(t)}; });
    const auto a1 = sampled_profile(1, 16, kTwoPi, [](double t) {
        return std::vector<cplx>{0.3 + 0.2 * std::sin(2 * t)};
    });
    const double plain = eta_relative_seeley_1d(straight_line_family(a0, a1));
    const double curved = eta_relative_seeley_1d(straight_line_family(
        a0, a1, [](double s) { return s * s * (3 - 2 * s); }, [](double s) { return 6 * s * (1 - s); }));
    EXPECT_NEAR(plain, curved, 1e-10);
    EXPECT_NEAR(plain, -0.6, 1e-13);
}

TEST(Seeley, WallOverloadChecksEndpoints) {
    const Grid g = Grid::torus(2, 16);
    WallData w = WallData::trivial(g, 1);
    w.a_minus = constant_one_form(g, ValueType::gauge(1), 1, {cplx(0.0, -0.1)});
    w.gauge_jump = constant_one_form(g, ValueType::gauge(1), 1, {cplx(0.0, -0.3)});
    const auto lo = wall_profile(w, Side::minus);
    const auto hi = wall_profile(w, Side::plus);
    EXPECT_NEAR(lo.samples[3].real(), 0.1, 1e-15);
    EXPECT_NEAR(hi.samples[3].real(), 0.4, 1e-15);
    EXPECT_NEAR(eta_relative_seeley_1d(w, straight_line_family(lo, hi)), -0.6, 1e-13);
    EXPECT_THROW(eta_relative_seeley_1d(w, straight_line_family(hi, lo)), std::invalid_argument);
}

TEST(WallProfile, RequiresTwoDimensions) {
    EXPECT_THROW(wall_profile(WallData::trivial(Grid::torus(4, 8), 1), Side::plus), std::invalid_argument);
}
