#include "wallindex/dirac.hpp"

#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wallindex {

const char* to_string(Discretization d) {
    return d == Discretization::spectral ? "spectral" : "finite-difference";
}

const char* to_string(EigenMethod m) {
    return m == EigenMethod::singular_values ? "singular-values" : "hermitian";
}

const char* to_string(ModeClass c) {
    switch (c) {
    case ModeClass::physical: return "physical";
    case ModeClass::cutoff: return "cutoff";
    case ModeClass::ambiguous: return "ambiguous";
    }
    return "ambiguous";
}

Eigen::MatrixXcd DiracOperator::full() const {
    const Eigen::Index m = chiral_block.rows();
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    d.topRightCorner(m, m) = chiral_block.adjoint();
    d.bottomLeftCorner(m, m) = chiral_block;
    return d;
}

namespace {

constexpr double kPi = std::numbers::pi;

// First-derivative matrix on a periodic line of n points and length len whose
// seam (between sites n-1 and 0) carries the phase exp(i alpha).
Eigen::MatrixXcd line_derivative(Discretization disc, int n, double len, double alpha) {
    const double h = len / n;
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    if (disc == Discretization::finite_difference) {
        for (int l = 0; l < n; ++l) {
            const cplx fwd = (l == n - 1) ? std::polar(1.0, alpha) : cplx(1.0);
            const cplx bwd = (l == 0) ? std::polar(1.0, -alpha) : cplx(1.0);
            d(l, (l + 1) % n) += fwd / (2.0 * h);
            d(l, (l - 1 + n) % n) -= bwd / (2.0 * h);
        }
        return d;
    }
    // band k in (-n/2, n/2], shifted by alpha / 2 pi through a gauge phase
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            cplx acc{};
            for (int k = -n / 2 + 1; k <= n / 2; ++k) {
                acc += cplx(0.0, kTwoPi * k / len) * std::polar(1.0, kTwoPi * k * (j - l) / n);
            }
            d(j, l) = acc / static_cast<double>(n);
        }
        d(j, j) += cplx(0.0, alpha / len);
    }
    Eigen::VectorXcd phase(n);
    for (int l = 0; l < n; ++l) phase[l] = std::polar(1.0, alpha * l / n);
    return phase.asDiagonal() * d * phase.conjugate().asDiagonal();
}

double wrap_phase(double a) {
    a = std::remainder(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    return a;
}

}  // namespace

DiracOperator build_dirac(const WallData& w, Discretization disc) {
    w.validate();
    const Grid& g = w.grid;
    if (g.dim() != 2) {
        throw std::invalid_argument("build_dirac: only two-dimensional configurations are supported");
    }
    if (w.metric.kind != "flat-product" || w.has_frame_jump() || !w.gamma_minus.is_zero()) {
        throw std::invalid_argument("build_dirac: requires a flat metric");
    }
    const int ax_s = g.wall_axis();
    const int ax_t = w.tangential_axis();
    const int ns = g.points(ax_s);
    const int nt = g.points(ax_t);
    const int r = w.rank;
    const std::size_t blk = static_cast<std::size_t>(r) * r;
    const Eigen::Index dim = static_cast<Eigen::Index>(g.size()) * r;

    DiracOperator op{w, disc, Eigen::MatrixXcd::Zero(dim, dim),
                     g.orientation() * (ax_s % 2 == 0 ? 1 : -1)};
    Eigen::MatrixXcd& lm = op.chiral_block;

    auto site = [&](int is, int it) {
        std::array<int, Grid::kMaxDim> idx{};
        idx[ax_s] = is;
        idx[ax_t] = it;
        return static_cast<Eigen::Index>(g.flatten(idx));
    };

    // s-derivative: relative plane l = 0 is the wall, the seam sits just below it
    for (int it = 0; it < nt; ++it) {
        const double alpha =
            wrap_phase(-kTwoPi * w.winding * g.coord(ax_t, it) / g.length(ax_t));
        const Eigen::MatrixXcd ds = line_derivative(disc, ns, g.length(ax_s), alpha);
        for (int l = 0; l < ns; ++l) {
            const int is = (g.wall_index() + l) % ns;
            for (int lp = 0; lp < ns; ++lp) {
                const cplx v = ds(l, lp);
                if (v == cplx{}) continue;
                const int isp = (g.wall_index() + lp) % ns;
                for (int a = 0; a < r; ++a) lm(site(is, it) * r + a, site(isp, it) * r + a) += v;
            }
        }
    }
    // -i d_t
    const Eigen::MatrixXcd dt = line_derivative(disc, nt, g.length(ax_t), 0.0);
    for (int is = 0; is < ns; ++is) {
        for (int it = 0; it < nt; ++it) {
            for (int itp = 0; itp < nt; ++itp) {
                const cplx v = cplx(0.0, -1.0) * dt(it, itp);
                if (v == cplx{}) continue;
                for (int a = 0; a < r; ++a) lm(site(is, it) * r + a, site(is, itp) * r + a) += v;
            }
        }
    }
    // i a_s + a_t with a = i A  =>  -A_s + i A_t
    const Form conn = bulk_connection(w, Side::minus);
    auto as = conn.component(static_cast<Mask>(1u << ax_s));
    auto at = conn.component(static_cast<Mask>(1u << ax_t));
    for (std::size_t p = 0; p < g.size(); ++p) {
        const Eigen::Index base = static_cast<Eigen::Index>(p) * r;
        for (int a = 0; a < r; ++a) {
            for (int b = 0; b < r; ++b) {
                const std::size_t e = p * blk + static_cast<std::size_t>(a) * r + b;
                cplx v{};
                if (!as.empty()) v -= as[e];
                if (!at.empty()) v += cplx(0.0, 1.0) * at[e];
                lm(base + a, base + b) += v;
            }
        }
    }
    return op;
}

namespace {

// Weights of the modes (columns of q, site-major with rank-r blocks) on the
// low Fourier band, as eigenpairs of the projected band projector.
struct BandSplit {
    Eigen::VectorXd weights;
};

BandSplit low_band_weights(const Eigen::MatrixXcd& q, const Grid& g, int r) {
    const int n0 = g.points(0);
    const int n1 = g.points(1);
    auto dft = [](int n) {
        Eigen::MatrixXcd f(n, n);
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) f(k, j) = std::polar(1.0, -kTwoPi * k * j / n);
        }
        return f;
    };
    auto is_low = [](int k, int n) {
        const int kk = (k > n / 2) ? k - n : k;  // representative in (-n/2, n/2]
        return std::abs(kk) <= n / 4;
    };
    const Eigen::MatrixXcd f0 = dft(n0);
    const Eigen::MatrixXcd f1 = dft(n1);
    std::vector<std::pair<int, int>> low;
    for (int k0 = 0; k0 < n0; ++k0) {
        for (int k1 = 0; k1 < n1; ++k1) {
            if (is_low(k0, n0) && is_low(k1, n1)) low.emplace_back(k0, k1);
        }
    }
    const Eigen::Index m = q.cols();
    const Eigen::Index rows = static_cast<Eigen::Index>(low.size()) * r;
    Eigen::MatrixXcd coeff(rows, m);
    for (Eigen::Index c = 0; c < m; ++c) {
        for (int a = 0; a < r; ++a) {
            Eigen::MatrixXcd field(n0, n1);
            for (int i0 = 0; i0 < n0; ++i0) {
                for (int i1 = 0; i1 < n1; ++i1) {
                    field(i0, i1) = q(static_cast<Eigen::Index>(i0 * n1 + i1) * r + a, c);
                }
            }
            const Eigen::MatrixXcd hat = f0 * field * f1.transpose();
            for (std::size_t i = 0; i < low.size(); ++i) {
                coeff(static_cast<Eigen::Index>(i) * r + a, c) = hat(low[i].first, low[i].second);
            }
        }
    }
    const Eigen::MatrixXcd proj = coeff.adjoint() * coeff / static_cast<double>(n0 * n1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(proj, Eigen::EigenvaluesOnly);
    return {es.eigenvalues()};
}

void classify_group(DiracSpectrum& out, const Eigen::MatrixXcd& q,
                    const std::vector<double>& magnitudes, double chirality, const Grid& g, int r,
                    const SpectrumOptions& o) {
    if (q.cols() == 0) return;
    const BandSplit split = low_band_weights(q, g, r);
    // magnitudes are sorted ascending; weights pair with them in order of
    // decreasing low-band content only as a label, the counts are what matter
    std::vector<double> mags = magnitudes;
    std::sort(mags.begin(), mags.end());
    const Eigen::Index m = split.weights.size();
    for (Eigen::Index i = 0; i < m; ++i) {
        ZeroMode z;
        const double wgt = std::clamp(split.weights[m - 1 - i], 0.0, 1.0);
        z.magnitude = mags[static_cast<std::size_t>(i)];
        z.chirality = chirality;
        z.low_band_weight = wgt;
        if (std::abs(chirality) <= o.chirality_purity) {
            z.kind = ModeClass::ambiguous;
        } else if (wgt > o.physical_weight) {
            z.kind = ModeClass::physical;
        } else if (wgt < o.cutoff_weight) {
            z.kind = ModeClass::cutoff;
        } else {
            z.kind = ModeClass::ambiguous;
        }
        switch (z.kind) {
        case ModeClass::physical: (chirality > 0 ? out.n_plus : out.n_minus) += 1; break;
        case ModeClass::cutoff: ++out.cutoff_modes; break;
        case ModeClass::ambiguous: ++out.ambiguous_modes; break;
        }
        out.zero_modes.push_back(z);
    }
}

void finish_pairing(DiracSpectrum& s) {
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    const std::size_t n = s.eigenvalues.size();
    s.pairing_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s.pairing_residual =
            std::max(s.pairing_residual, std::abs(s.eigenvalues[i] + s.eigenvalues[n - 1 - i]));
    }
}

DiracSpectrum spectrum_svd(const DiracOperator& d, const SpectrumOptions& o) {
    const Eigen::Index m = d.chiral_block.rows();
    Eigen::MatrixXcd a = d.chiral_block;
    Eigen::VectorXd sv(m);
    Eigen::MatrixXcd u(m, m), vt(m, m);
    const lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'A', static_cast<lapack_int>(m), static_cast<lapack_int>(m),
        reinterpret_cast<lapack_complex_double*>(a.data()), static_cast<lapack_int>(m), sv.data(),
        reinterpret_cast<lapack_complex_double*>(u.data()), static_cast<lapack_int>(m),
        reinterpret_cast<lapack_complex_double*>(vt.data()), static_cast<lapack_int>(m));
    if (info != 0) {
        throw std::runtime_error("spectrum: singular value decomposition failed (info " +
                                 std::to_string(info) + ", dimension " + std::to_string(m) + ")");
    }
    DiracSpectrum s;
    s.threshold = o.threshold;
    s.eigenvalues.reserve(static_cast<std::size_t>(2 * m));
    std::vector<Eigen::Index> small;
    std::vector<double> mags;
    for (Eigen::Index i = 0; i < m; ++i) {
        s.eigenvalues.push_back(sv[i]);
        s.eigenvalues.push_back(-sv[i]);
        if (sv[i] < o.threshold) {
            small.push_back(i);
            mags.push_back(sv[i]);
        }
    }
    finish_pairing(s);
    const Eigen::Index k = static_cast<Eigen::Index>(small.size());
    Eigen::MatrixXcd vplus(m, k), vminus(m, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        vplus.col(j) = vt.row(small[static_cast<std::size_t>(j)]).adjoint();
        vminus.col(j) = u.col(small[static_cast<std::size_t>(j)]);
    }
    const double sign = d.chirality_sign;
    classify_group(s, vplus, mags, sign, d.wall.grid, d.wall.rank, o);
    classify_group(s, vminus, mags, -sign, d.wall.grid, d.wall.rank, o);
    return s;
}

DiracSpectrum spectrum_hermitian(const DiracOperator& d, const SpectrumOptions& o) {
    const Eigen::MatrixXcd full = d.full();
    const Eigen::Index m = d.chiral_block.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(full);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("spectrum: Hermitian eigensolver did not converge (dimension " +
                                 std::to_string(full.rows()) + ")");
    }
    DiracSpectrum s;
    s.threshold = o.threshold;
    const Eigen::VectorXd& ev = es.eigenvalues();
    s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    finish_pairing(s);

    std::vector<Eigen::Index> small;
    std::vector<double> mags;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i]) < o.threshold) {
            small.push_back(i);
            mags.push_back(std::abs(ev[i]));
        }
    }
    if (small.empty()) return s;
    Eigen::MatrixXcd vz(full.rows(), static_cast<Eigen::Index>(small.size()));
    for (std::size_t j = 0; j < small.size(); ++j) {
        vz.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(small[j]);
    }
    // diagonalize gamma inside the window
    Eigen::VectorXd gamma(full.rows());
    gamma.head(m).setConstant(d.chirality_sign);
    gamma.tail(m).setConstant(-d.chirality_sign);
    const Eigen::MatrixXcd gz = vz.adjoint() * gamma.asDiagonal() * vz;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(gz);
    const Eigen::MatrixXcd modes = vz * gs.eigenvectors();
    const Eigen::VectorXd& chir = gs.eigenvalues();

    std::vector<Eigen::Index> pos, neg, mixed;
    for (Eigen::Index j = 0; j < chir.size(); ++j) {
        if (chir[j] > o.chirality_purity) pos.push_back(j);
        else if (chir[j] < -o.chirality_purity) neg.push_back(j);
        else mixed.push_back(j);
    }
    // sort magnitudes so each group takes the smallest ones; only a label
    std::sort(mags.begin(), mags.end());
    auto group = [&](const std::vector<Eigen::Index>& cols, double chirality) {
        if (cols.empty()) return;
        Eigen::MatrixXcd q(m, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto c = modes.col(cols[j]);
            q.col(static_cast<Eigen::Index>(j)) = chirality * d.chirality_sign > 0 ? c.head(m) : c.tail(m);
            q.col(static_cast<Eigen::Index>(j)).normalize();
        }
        std::vector<double> gm(mags.begin(), mags.begin() + static_cast<long>(cols.size()));
        classify_group(s, q, gm, chirality, d.wall.grid, d.wall.rank, o);
    };
    group(pos, 1.0);
    group(neg, -1.0);
    for (Eigen::Index j : mixed) {
        ZeroMode z;
        z.chirality = chir[j];
        z.kind = ModeClass::ambiguous;
        s.zero_modes.push_back(z);
        ++s.ambiguous_modes;
    }
    return s;
}

}  // namespace

DiracSpectrum spectrum(const DiracOperator& d, const SpectrumOptions& options) {
    const Eigen::Index cap = options.max_dimension * d.wall.rank;
    if (d.dimension() > cap) {
        throw std::invalid_argument("spectrum: operator dimension " + std::to_string(d.dimension()) +
                                    " exceeds the cap " + std::to_string(cap));
    }
    return options.method == EigenMethod::singular_values ? spectrum_svd(d, options)
                                                          : spectrum_hermitian(d, options);
}

int index_spectral(const DiracSpectrum& s) {
    if (s.ambiguous_modes > 0) {
        std::ostringstream msg;
        msg << "index_spectral: " << s.ambiguous_modes << " ambiguous near-zero mode(s):";
        for (const auto& z : s.zero_modes) {
            if (z.kind != ModeClass::ambiguous) continue;
            msg << " [|lambda|=" << z.magnitude << " chirality=" << z.chirality
                << " low-band=" << z.low_band_weight << "]";
        }
        throw AmbiguousModeError(msg.str());
    }
    return s.n_plus - s.n_minus;
}

void write_spectrum_csv(const DiracSpectrum& s, std::ostream& out) {
    out << "eigenvalue,chirality,low_band_weight\n";
    out.precision(17);
    // window modes appear twice in the eigenvalue list (+-sigma); list them
    // once each in the resolved basis instead
    for (double v : s.eigenvalues) {
        if (std::abs(v) < s.threshold) continue;
        out << v << ",0,\n";
    }
    std::vector<ZeroMode> modes = s.zero_modes;
    std::stable_sort(modes.begin(), modes.end(), [](const ZeroMode& a, const ZeroMode& b) {
        return a.chirality * a.magnitude < b.chirality * b.magnitude;
    });
    for (const auto& z : modes) {
        out << (z.chirality < 0 ? -z.magnitude : z.magnitude) << ',' << z.chirality << ','
            << z.low_band_weight << '\n';
    }
}

IndexReport index_predicted(const WallData& w, const IndexOptions& options) {
    IndexReport rep;
    rep.bulk = bulk_pontryagin_integral(w);
    rep.rsa = rsa_report(w, options.eta);
    rep.predicted = rep.bulk.real() - 0.5 * rep.rsa.rsa_plus.real();
    rep.integrality_gap = std::abs(rep.predicted - std::round(rep.predicted));
    if (!options.spectral) {
        rep.spectral_status = "not requested";
        return rep;
    }
    if (w.grid.dim() != 2) {
        rep.spectral_status = "unavailable: spectral index only for two-dimensional configurations";
        return rep;
    }
    if (w.has_frame_jump() || !w.gamma_minus.is_zero()) {
        rep.spectral_status = "unavailable: spectral index only for flat metrics";
        return rep;
    }
    const DiracOperator d = build_dirac(w, options.discretization);
    rep.spectrum = spectrum(d, options.spectrum);
    rep.spectral_index = index_spectral(*rep.spectrum);
    rep.residual = std::abs(rep.predicted - *rep.spectral_index);
    rep.spectral_status = "computed";
    return rep;
}

}  // namespace wallindex
