#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallindex/wall.hpp"

namespace wallindex {

/// Hermitian potential a(theta) on a circle of circumference `length`, sampled
/// at theta_j = j * length / N as row-major rank x rank matrices. The circle
/// operator is -i d/dtheta + a(theta) on rank-r periodic spinors.
struct CircleProfile {
    double length = kTwoPi;
    int rank = 1;
    std::vector<cplx> samples;  ///< N * rank^2 entries

    int points() const { return static_cast<int>(samples.size() / (static_cast<std::size_t>(rank) * rank)); }
    static CircleProfile constant(double value, int points = 16, double length = kTwoPi);
};

/// Raised when the extrapolated eta value fails its convergence check.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EtaOptions {
    int cutoff = 128;                 ///< Fourier modes |k| <= cutoff
    double zero_threshold = 1e-12;    ///< eigenvalues below are kernel
    double convergence_tol = 1e-5;    ///< bound on the last extrapolation step
};

struct EtaResult {
    double value = 0.0;
    int kernel_dimension = 0;
    std::array<double, 3> widths{};    ///< smoothing widths w, 2w, 4w
    std::array<double, 3> smoothed{};  ///< sum sign(l) exp(-(l/w)^2)
    std::array<double, 2> first_level{};
    double extrapolation_error = 0.0;  ///< |final - last first-level value|
};

/// Eta invariant of -i d/dtheta + a on the circle.
///
/// The operator is truncated to Fourier modes |k| <= cutoff. The smoothed
/// signature sum_l sign(l) exp(-(l/w)^2) has an expansion eta + c1/w^2 +
/// c2/w^4 + ..., so two Richardson steps over w = cutoff/24, cutoff/12,
/// cutoff/6 remove the first two corrections. Zero eigenvalues are excluded
/// and counted. Throws ConvergenceError if the last step moves the value by
/// more than `convergence_tol`.
EtaResult eta_circle_spectral(const CircleProfile& a, const EtaOptions& options = {});

/// One-parameter family s -> a(s, .) on [0, 1] with its s-derivative.
struct ProfileFamily {
    std::function<CircleProfile(double)> value;
    std::function<CircleProfile(double)> derivative;
};

/// a(s) = a0 + f(s) (a1 - a0); f defaults to the identity.
ProfileFamily straight_line_family(const CircleProfile& a0, const CircleProfile& a1,
                                   std::function<double(double)> f = {},
                                   std::function<double(double)> fprime = {});

/// Relative eta from the variation formula in one dimension,
///   -(2/sqrt(pi)) int_0^1 ds (4 pi)^{-1/2} int tr d_s a dtheta,
/// with order-q Gauss-Legendre in s and the trapezoid rule in theta.
double eta_relative_seeley_1d(const ProfileFamily& family, int order = 32);

/// As above, after checking that the family starts at the minus wall
/// potential and ends at the plus one. Throws std::invalid_argument otherwise.
double eta_relative_seeley_1d(const WallData& w, const ProfileFamily& family, int order = 32);

/// Hermitian wall potential a = i A_t|wall on the one-dimensional wall of a
/// two-dimensional configuration.
CircleProfile wall_profile(const WallData& w, Side side);

}  // namespace wallindex
