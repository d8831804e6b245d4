#pragma once

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wallindex/rsa.hpp"
#include "wallindex/wall.hpp"

namespace wallindex {

enum class Discretization {
    spectral,           ///< band-limited (SLAC) derivative, no doublers
    finite_difference,  ///< naive central differences; doublers are filtered
};

const char* to_string(Discretization d);

/// Domain-wall Dirac operator on a two-dimensional torus,
///
///   D = [[0, L^dagger], [L, 0]],   L = (d_s + i a_s) + (-i d_t + a_t),
///
/// with Hermitian potential a = i A, s the wall axis and t the tangential one.
/// The wall-plane sites take the minus-side value. The clutching winding
/// enters as a twist of the s-derivative across the wall seam, so each
/// tangential line sees a boundary phase exp(-2 pi i k t / L_t).
struct DiracOperator {
    WallData wall;
    Discretization discretization = Discretization::spectral;
    Eigen::MatrixXcd chiral_block;  ///< L, mapping the upper to the lower block
    /// gamma = chirality_sign * diag(+1, -1); the sign is orientation * (-1)^w.
    int chirality_sign = 1;

    Eigen::Index dimension() const { return 2 * chiral_block.rows(); }
    Eigen::MatrixXcd full() const;
};

/// Throws std::invalid_argument unless the configuration is two-dimensional
/// with a flat metric.
DiracOperator build_dirac(const WallData& w, Discretization disc = Discretization::spectral);

enum class EigenMethod {
    singular_values,  ///< SVD of the chiral block; spectrum is +-sigma
    hermitian,        ///< dense eigensolve of the full operator
};

const char* to_string(EigenMethod m);

/// Kind of a mode in the near-zero window, decided by its weight on the low
/// Fourier band |k_mu| <= N/4.
enum class ModeClass { physical, cutoff, ambiguous };

const char* to_string(ModeClass c);

struct ZeroMode {
    double magnitude = 0.0;  ///< |eigenvalue| in the window (sigma for SVD)
    double chirality = 0.0;  ///< <gamma> in the chirality-resolved basis
    double low_band_weight = 0.0;
    ModeClass kind = ModeClass::ambiguous;
};

struct SpectrumOptions {
    double threshold = 1e-2;  ///< near-zero window |lambda| < threshold
    EigenMethod method = EigenMethod::singular_values;
    Eigen::Index max_dimension = 2 * 48 * 48;  ///< per unit gauge rank
    double physical_weight = 0.75;
    double cutoff_weight = 0.25;
    double chirality_purity = 0.99;
};

/// Chirality-graded spectrum. Inside the window the modes are re-expressed in
/// the basis diagonalizing gamma, then, per chirality, the low-band
/// projector. Physical modes have low-band weight above `physical_weight`;
/// modes below `cutoff_weight` are artifacts of the momentum cutoff or, for
/// finite differences, doublers.
struct DiracSpectrum {
    std::vector<double> eigenvalues;  ///< ascending
    double threshold = 0.0;
    std::vector<ZeroMode> zero_modes;
    int n_plus = 0;   ///< physical positive-chirality modes
    int n_minus = 0;  ///< physical negative-chirality modes
    int cutoff_modes = 0;
    int ambiguous_modes = 0;
    /// max_i |lambda_i + lambda_{N-1-i}|
    double pairing_residual = 0.0;
};

DiracSpectrum spectrum(const DiracOperator& d, const SpectrumOptions& options = {});

/// Raised by index_spectral when a near-zero mode cannot be classified.
class AmbiguousModeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// n_plus - n_minus. Throws AmbiguousModeError if any window mode is
/// ambiguous.
int index_spectral(const DiracSpectrum& s);

/// Rows "eigenvalue,chirality,low_band_weight". Window modes are listed in the
/// chirality-resolved basis with the magnitude signed by their chirality;
/// paired modes carry chirality 0.
void write_spectrum_csv(const DiracSpectrum& s, std::ostream& out);

struct IndexOptions {
    bool spectral = true;
    Discretization discretization = Discretization::spectral;
    SpectrumOptions spectrum;
    EtaOptions eta;
};

struct IndexReport {
    cplx bulk;      ///< integral of the Pontryagin density off the wall
    RSAReport rsa;
    double predicted = 0.0;  ///< bulk - rsa / 2 (real parts)
    double integrality_gap = 0.0;
    std::optional<int> spectral_index;
    std::optional<double> residual;  ///< |predicted - spectral|
    std::optional<DiracSpectrum> spectrum;
    std::string spectral_status;  ///< "computed" or why it is unavailable
};

/// Predicted index bulk - rsa / 2 and, for two-dimensional flat
/// configurations, the spectral index of the discretized operator.
IndexReport index_predicted(const WallData& w, const IndexOptions& options = {});

}  // namespace wallindex
