#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wallindex/charclasses.hpp"
#include "wallindex/wall.hpp"

namespace wallindex {

/// Monotone profile f: [0, 1] -> [0, 1] with f(0) = 0, f(1) = 1.
///
/// The default is the normalized bump integral f(t) = int_0^t b / int_0^1 b,
/// b(u) = exp(-1/(u(1-u))), all of whose derivatives vanish at both ends.
class SmoothProfile {
public:
    static SmoothProfile bump();
    /// Caller-supplied profile; `inverse` may be empty, in which case it is
    /// found by bracketing.
    static SmoothProfile custom(std::string id, std::function<double(double)> value,
                                std::function<double(double)> derivative,
                                std::function<double(double)> inverse = {});

    const std::string& id() const { return id_; }
    double value(double t) const;
    /// m-th derivative, m >= 1 (the bump supports m <= 8).
    double derivative(double t, int m = 1) const;
    /// Solves f(t) = y on [0, 1].
    double inverse(double y) const;

private:
    std::string id_;
    std::function<double(double)> value_;
    std::function<double(double)> derivative_;
    std::function<double(double)> inverse_;
    double bump_norm_ = 0.0;  ///< int_0^1 b, only for the bump
};

/// Field data on the collar Sigma x [0, eps]:
///   A_eps = B1 + s B2 + f(s/eps) B3,   omega = omega1 + s omega2.
/// B1, B2, B3 are 1-forms on the wall grid, omega1 and omega2 scalar mixed
/// forms of even degree there.
struct CylinderConfig {
    Grid wall;
    double epsilon = 0.1;
    int transverse_points = 32;
    Form b1;
    Form b2;
    Form b3;
    MixedForm omega1;
    MixedForm omega2;
    InvariantPolynomial polynomial = InvariantPolynomial::chern_character();
    SmoothProfile profile = SmoothProfile::bump();

    /// Throws std::invalid_argument on inconsistent grids, degrees or values.
    void validate() const;
};

/// Collar for a wall with continuous frame connection: B1 = A-|wall, B2 = 0,
/// B3 = jump|wall, omega1 = Â(R)|wall, omega2 = 0, V = ch. Throws if the
/// frame connection jumps.
CylinderConfig paste_cylinder(const WallData& w, double epsilon = 0.1, int transverse_points = 32);

/// int over Sigma x [0, eps] of the top-degree part of omega ^ V(F_eps), with
/// the collar oriented as ds ^ (wall orientation).
///
/// F_eps = ds ^ (B2 + eps^-1 f'(s/eps) B3) + F_wall(s) is assembled in a
/// tangential/normal split and raised to powers directly. The part carrying
/// eps^-1 f' is integrated in t = f(s/eps) with Gauss nodes, the B2 part with
/// Gauss nodes in s.
cplx cylinder_integral(const CylinderConfig& c);

/// int_wall omega1 ^ TV(B1 + B3, B1): the eps -> 0 limit of cylinder_integral.
cplx cylinder_limit(const CylinderConfig& c, int quadrature_order = 16);

/// Which connection is interpolated on the first of the two collars.
enum class CollarOrder {
    frame_first,  ///< frame jump, then gauge jump
    gauge_first,  ///< gauge jump, then frame jump
};

const char* to_string(CollarOrder o);

struct TwoCollarResult {
    cplx first;   ///< integral over the first collar
    cplx second;  ///< integral over the second collar
    cplx total;   ///< -2 (first + second)
};

/// Relative spectral asymmetry from two collars pasted in a row; each carries
/// one of the two jumps while the other connection sits at its current value.
/// frame_first reproduces RsaForm::a_hat_plus, gauge_first a_hat_minus.
TwoCollarResult two_cylinder_rsa(const WallData& w, CollarOrder order = CollarOrder::frame_first,
                                 double epsilon = 0.1, int transverse_points = 32);

struct SweepPoint {
    double epsilon;
    cplx value;
};

/// cylinder_integral over a list of collar widths.
std::vector<SweepPoint> epsilon_sweep(const CylinderConfig& c, const std::vector<double>& epsilons);

}  // namespace wallindex
