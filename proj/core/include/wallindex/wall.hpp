#pragma once

#include <string>

#include "wallindex/charclasses.hpp"
#include "wallindex/form.hpp"

namespace wallindex {

enum class Side { plus, minus };

/// Metric description. Only flat product metrics are supported: the metric is
/// s-independent near the wall, so the regularized connection equals the
/// Riemannian one and the extrinsic curvature trace vanishes.
struct MetricSpec {
    std::string kind = "flat-product";
    double extrinsic_curvature_trace() const { return 0.0; }
};

/// Domain-wall configuration on a torus cut open along the wall plane.
///
/// Let s be the wall-axis coordinate measured from the wall, u = (s - s0)/L in
/// [0, 1) on the cut cylinder, and h(u) = 1 - u, ramp(u) = u. The global
/// connection on the cut chart is
///
///   A(s) = A_minus + h(u) jump + ramp(u) W,   W = -i (2 pi k / L_t) dx^t 1_r,
///
/// where t is the first tangential axis and k = `winding`. At u -> 0+ this is
/// A_minus + jump (the A+ side); at u -> 1- it is A_minus + W, which the
/// clutching gauge transformation exp(-2 pi i k x^t / L_t) maps back to A_minus
/// (the A- side). The Riemannian connection follows the same pattern with
/// `gamma_jump` and no winding. The smooth parts and jumps are periodic,
/// band-limited densities.
struct WallData {
    Grid grid;
    int rank = 1;
    Form a_minus;     ///< gauge(rank) 1-form
    Form gauge_jump;  ///< gauge(rank) 1-form
    Form gamma_minus; ///< frame(n) 1-form
    Form gamma_jump;  ///< frame(n) 1-form
    int winding = 0;  ///< flux quanta of the clutching per gauge slot
    MetricSpec metric;

    /// Zero connections and jumps on the given grid.
    static WallData trivial(const Grid& grid, int rank);

    /// Throws std::invalid_argument on inconsistent grids or value types.
    void validate() const;

    bool has_frame_jump() const { return !gamma_jump.is_zero(); }
    /// The tangential axis carrying the clutching flux.
    int tangential_axis() const { return grid.wall_axis() == 0 ? 1 : 0; }
};

/// Profile values on the plane at relative wall-axis offset l in [0, N): the
/// wall plane (l = 0) takes the one-sided limit of `side`.
double wall_sawtooth(const Grid& grid, int l, Side side);
double wall_ramp(const Grid& grid, int l, Side side);

/// Gauge connection on the cut chart with the wall plane holding the `side`
/// limit. On the minus side the wall plane holds A_minus, i.e. the limit
/// expressed in the plus chart.
Form bulk_connection(const WallData& w, Side side);
Form bulk_frame_connection(const WallData& w, Side side);

/// Curvature of the cut-chart connection with the transverse derivatives of
/// h and ramp applied analytically; never differentiated across the wall.
Form bulk_curvature(const WallData& w, Side side);
Form bulk_frame_curvature(const WallData& w, Side side);

/// Connections restricted to the wall: A+|wall = (A_minus + jump)(s0),
/// A-|wall = A_minus(s0); likewise for the frame connection.
Form wall_connection(const WallData& w, Side side);
Form wall_frame_connection(const WallData& w, Side side);

/// ch(F) and Â(R) of the restricted connections, computed intrinsically on
/// the wall grid. On a one-dimensional wall only the constant term survives.
MixedForm wall_chern_character(const WallData& w, Side side);
MixedForm wall_a_hat(const WallData& w, Side side);

/// Curvatures with the sawtooth frozen at the constant value h everywhere:
/// dA- + h d(jump) - L^-1 ds ^ jump + L^-1 ds ^ W + (A- + h jump)^2. Every
/// term is periodic, and the cut-chart curvature at a plane with sawtooth h
/// agrees with it there.
Form frozen_curvature(const WallData& w, double h);
Form frozen_frame_curvature(const WallData& w, double h);

/// Bulk term: integral of the top-degree part of Â(R) ^ ch(F) over the torus
/// minus the wall.
///
/// On the cut cylinder the integrand is a polynomial of degree <= 4 in the
/// sawtooth h(s) with periodic coefficients. It is sampled at five frozen
/// values of h, and each plane is weighted by the exact integral of the
/// Lagrange basis polynomial in h(s) against the trigonometric cardinal
/// function of that plane, so the result is exact for band-limited data.
cplx bulk_pontryagin_integral(const WallData& w);

/// The same integral by one-sided trapezoid sums over the two open halves
/// (Domain::half_plus and Domain::half_minus). Second-order accurate when the
/// integrand depends on s.
cplx bulk_pontryagin_trapezoid(const WallData& w);

}  // namespace wallindex
