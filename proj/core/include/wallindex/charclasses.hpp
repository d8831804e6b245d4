#pragma once

#include <array>
#include <span>
#include <string>

#include "wallindex/form.hpp"

namespace wallindex {

/// Ad-invariant polynomial V = sum_k V_k with V_k(F) = c_k tr(F^k), truncated
/// at k = 2 (manifolds of dimension <= 4).
///
/// Normalizations:
///   ch(F)  = tr exp(iF / 2pi)   -> c_0 = rank, c_1 = i/2pi, c_2 = -1/(8 pi^2)
///   Â(R)   = 1 - p_1/24, p_1 = -tr(R^2)/(8 pi^2)
///                                -> c_0 = 1,    c_1 = 0,    c_2 = 1/(192 pi^2)
/// c_1 makes integer-flux u(1) fields integrate to integers.
struct InvariantPolynomial {
    enum class Kind { chern_character, a_hat, custom };

    Kind kind = Kind::custom;
    std::string name;
    bool degree0_is_rank = false;  ///< V_0 = rank instead of `degree0`
    cplx degree0 = 0.0;
    std::array<cplx, 3> coeff{};   ///< coeff[k] multiplies tr(F^k); coeff[0] unused

    static InvariantPolynomial chern_character();
    static InvariantPolynomial a_hat();
    static InvariantPolynomial custom(std::string name, cplx c0, cplx c1, cplx c2);

    static constexpr int kMaxOrder = 2;
    cplx coefficient(int k) const { return (k >= 1 && k <= kMaxOrder) ? coeff[k] : cplx{}; }
    cplx constant_term(int rank) const {
        return degree0_is_rank ? cplx(static_cast<double>(rank)) : degree0;
    }
};

/// F = dA + A ^ A.
Form curvature(const Form& connection);

/// V(F) as a scalar mixed form of even degrees, truncated at the grid dimension.
MixedForm evaluate(const InvariantPolynomial& v, const Form& curvature);

MixedForm chern_character(const Form& curvature);
/// Throws std::invalid_argument unless R is frame (so(n)) valued.
MixedForm a_hat(const Form& riemann);
/// Â(R) ^ ch(F).
MixedForm pontryagin_density(const Form& riemann, const Form& curvature);

/// Symmetric multilinear extension of V_k,
///   Ṽ_k(X_1..X_k) = c_k / k! * sum_sigma (+-) tr(X_sigma1 ^ ... ^ X_sigmak),
/// with the Koszul sign for odd-degree slots.
Form polarization_eval(const InvariantPolynomial& v, int k, std::span<const Form> args);

/// TV(A1, A0) = sum_k k * int_0^1 dt Ṽ_k(A1 - A0, F_t, ..., F_t),
/// A_t = A0 + t (A1 - A0), with order-q Gauss-Legendre in t applied to the
/// polynomial t-dependence of F_t. Satisfies
/// d TV = V(F1) - V(F0).
MixedForm transgression(const InvariantPolynomial& v, const Form& a1, const Form& a0,
                        int order = 16);

}  // namespace wallindex
