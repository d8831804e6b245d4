#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wallindex/eta.hpp"
#include "wallindex/wall.hpp"

namespace wallindex {

/// The two equivalent wall integrands of the relative spectral asymmetry:
///   a_hat_plus:  -2 int_wall [Â(R+) ^ Tch(A+, A-) + TÂ(G+, G-) ^ ch(F-)]
///   a_hat_minus: -2 int_wall [Â(R-) ^ Tch(A+, A-) + TÂ(G+, G-) ^ ch(F+)]
/// They differ by an exact form on the closed wall.
enum class RsaForm { a_hat_plus, a_hat_minus };

const char* to_string(RsaForm f);

/// Relative spectral asymmetry from characteristic forms on the wall.
cplx generalized_rsa(const WallData& w, RsaForm form = RsaForm::a_hat_plus,
                     int quadrature_order = 16);

/// -2 int_wall Â(R+) ^ Tch(A+, A-). Requires a vanishing frame jump; throws
/// std::invalid_argument otherwise.
cplx rsa_reduced(const WallData& w, int quadrature_order = 16);

/// int_wall TÂ(G', G) ^ [ch(F+) - ch(F-)], the term separating the
/// characteristic-form RSA from the spectral one. With flat product metrics
/// the regularized connection G' equals G and this vanishes identically.
cplx metric_correction_term(const WallData& w, int quadrature_order = 16);

struct RSAReport {
    cplx rsa_plus;                  ///< RsaForm::a_hat_plus
    cplx rsa_minus;                 ///< RsaForm::a_hat_minus
    std::optional<cplx> reduced;    ///< only without a frame jump
    cplx correction;
    /// Two-dimensional configurations only: orientation * (eta(D+) - eta(D-))
    /// from spectral etas, and the variation-formula value along the straight
    /// line between the wall potentials.
    std::optional<double> eta_spectral;
    std::optional<double> eta_seeley;
    std::optional<EtaResult> eta_plus;
    std::optional<EtaResult> eta_minus;
    /// round((rsa - eta_spectral) / 2): eigenvalues crossing zero between the
    /// wall potentials shift the difference of etas by even integers.
    int spectral_flow = 0;
    /// Channel names and the symmetric matrix of pairwise |differences|.
    std::vector<std::string> channels;
    std::vector<std::vector<double>> residuals;
    double max_imaginary = 0.0;

    /// Real value of a channel by name.
    std::optional<double> channel(const std::string& name) const;
};

/// Evaluates every available channel. The spectral channels are computed for
/// two-dimensional configurations and left empty otherwise.
RSAReport rsa_report(const WallData& w, const EtaOptions& eta = {}, int quadrature_order = 16);

}  // namespace wallindex
