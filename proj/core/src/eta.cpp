#include "wallindex/eta.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wallindex/quadrature.hpp"

namespace wallindex {

CircleProfile CircleProfile::constant(double value, int points, double length) {
    return CircleProfile{length, 1, std::vector<cplx>(static_cast<std::size_t>(points), value)};
}

namespace {

void check_profile(const CircleProfile& a) {
    const std::size_t blk = static_cast<std::size_t>(a.rank) * a.rank;
    if (a.rank < 1 || a.samples.empty() || a.samples.size() % blk != 0) {
        throw std::invalid_argument("circle profile: sample count must be N * rank^2");
    }
    if (!(a.length > 0.0)) throw std::invalid_argument("circle profile: length must be positive");
}

double smoothed_signature(const Eigen::VectorXd& ev, double width, double zero) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double l = ev[i];
        if (std::abs(l) < zero) continue;
        const double x = l / width;
        s += (l > 0 ? 1.0 : -1.0) * std::exp(-x * x);
    }
    return s;
}

}  // namespace

EtaResult eta_circle_spectral(const CircleProfile& a, const EtaOptions& options) {
    check_profile(a);
    if (options.cutoff < 64) throw std::invalid_argument("eta: cutoff must be at least 64");
    const int r = a.rank;
    const int n = a.points();
    const int kmax = options.cutoff;
    const int modes = 2 * kmax + 1;
    const std::size_t blk = static_cast<std::size_t>(r) * r;

    // Fourier coefficients ahat(m) = (1/N) sum_j a_j e^{-2 pi i m j / N}, |m| < N/2
    const int mmax = n / 2 - 1;
    std::vector<cplx> ahat(static_cast<std::size_t>(2 * mmax + 1) * blk);
    for (int m = -mmax; m <= mmax; ++m) {
        for (int j = 0; j < n; ++j) {
            const cplx ph = std::polar(1.0 / n, -kTwoPi * m * j / n);
            for (std::size_t e = 0; e < blk; ++e) {
                ahat[static_cast<std::size_t>(m + mmax) * blk + e] += ph * a.samples[j * blk + e];
            }
        }
    }

    const Eigen::Index dim = static_cast<Eigen::Index>(modes) * r;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    const double q = kTwoPi / a.length;
    for (int k = -kmax; k <= kmax; ++k) {
        for (int kp = -kmax; kp <= kmax; ++kp) {
            const int m = k - kp;
            const bool diag = (m == 0);
            if (std::abs(m) > mmax && !diag) continue;
            for (int al = 0; al < r; ++al) {
                for (int be = 0; be < r; ++be) {
                    cplx v = ahat[static_cast<std::size_t>(m + mmax) * blk +
                                  static_cast<std::size_t>(al) * r + be];
                    if (diag && al == be) v += q * k;
                    h(static_cast<Eigen::Index>(k + kmax) * r + al,
                      static_cast<Eigen::Index>(kp + kmax) * r + be) = v;
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("eta: eigensolver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();

    EtaResult res;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i]) < options.zero_threshold) ++res.kernel_dimension;
    }
    // widths measured in eigenvalue units
    const double base = q * kmax / 24.0;
    for (int j = 0; j < 3; ++j) {
        res.widths[j] = base * (1 << j);
        res.smoothed[j] = smoothed_signature(ev, res.widths[j], options.zero_threshold);
    }
    for (int j = 0; j < 2; ++j) {
        res.first_level[j] = (4.0 * res.smoothed[j + 1] - res.smoothed[j]) / 3.0;
    }
    res.value = (16.0 * res.first_level[1] - res.first_level[0]) / 15.0;
    res.extrapolation_error = std::abs(res.value - res.first_level[1]);
    if (res.extrapolation_error > options.convergence_tol) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "eta: extrapolation did not converge (step " << res.extrapolation_error
            << " > " << options.convergence_tol << "; smoothed sums " << res.smoothed[0] << ", "
            << res.smoothed[1] << ", " << res.smoothed[2] << ")";
        throw ConvergenceError(msg.str());
    }
    return res;
}

ProfileFamily straight_line_family(const CircleProfile& a0, const CircleProfile& a1,
                                   std::function<double(double)> f,
                                   std::function<double(double)> fprime) {
    check_profile(a0);
    check_profile(a1);
    if (a0.rank != a1.rank || a0.samples.size() != a1.samples.size() || a0.length != a1.length) {
        throw std::invalid_argument("straight_line_family: endpoint profiles differ in shape");
    }
    if (!f) {
        f = [](double s) { return s; };
        fprime = [](double) { return 1.0; };
    }
    if (!fprime) throw std::invalid_argument("straight_line_family: derivative required");
    ProfileFamily fam;
    fam.value = [a0, a1, f](double s) {
        CircleProfile out = a0;
        const double t = f(s);
        for (std::size_t i = 0; i < out.samples.size(); ++i) {
            out.samples[i] += t * (a1.samples[i] - a0.samples[i]);
        }
        return out;
    };
    fam.derivative = [a0, a1, fprime](double s) {
        CircleProfile out = a0;
        const double dt = fprime(s);
        for (std::size_t i = 0; i < out.samples.size(); ++i) {
            out.samples[i] = dt * (a1.samples[i] - a0.samples[i]);
        }
        return out;
    };
    return fam;
}

double eta_relative_seeley_1d(const ProfileFamily& family, int order) {
    const auto rule = gauss_legendre(order);
    double total = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const CircleProfile da = family.derivative(rule.nodes[q]);
        check_profile(da);
        const int r = da.rank;
        const std::size_t blk = static_cast<std::size_t>(r) * r;
        const int n = da.points();
        cplx tr{};
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < r; ++i) tr += da.samples[j * blk + static_cast<std::size_t>(i) * r + i];
        }
        // (4 pi)^{-1/2} int tr Q dtheta with the trapezoid rule
        const double a0 = tr.real() * (da.length / n) / std::sqrt(4.0 * std::numbers::pi);
        total += rule.weights[q] * a0;
    }
    return -2.0 / std::sqrt(std::numbers::pi) * total;
}

double eta_relative_seeley_1d(const WallData& w, const ProfileFamily& family, int order) {
    const CircleProfile lo = wall_profile(w, Side::minus);
    const CircleProfile hi = wall_profile(w, Side::plus);
    auto mismatch = [](const CircleProfile& x, const CircleProfile& y) {
        if (x.rank != y.rank || x.samples.size() != y.samples.size()) return true;
        for (std::size_t i = 0; i < x.samples.size(); ++i) {
            if (std::abs(x.samples[i] - y.samples[i]) > 1e-12) return true;
        }
        return false;
    };
    if (mismatch(family.value(0.0), lo)) {
        throw std::invalid_argument("eta_relative_seeley_1d: family does not start at the minus wall potential");
    }
    if (mismatch(family.value(1.0), hi)) {
        throw std::invalid_argument("eta_relative_seeley_1d: family does not end at the plus wall potential");
    }
    return eta_relative_seeley_1d(family, order);
}

CircleProfile wall_profile(const WallData& w, Side side) {
    if (w.grid.dim() != 2) {
        throw std::invalid_argument("wall_profile: needs a two-dimensional configuration");
    }
    const Form a = wall_connection(w, side);
    const Grid& g = a.grid();
    CircleProfile p;
    p.length = g.length(0);
    p.rank = w.rank;
    p.samples.assign(g.size() * a.block(), cplx{});
    auto c = a.component(1);
    for (std::size_t i = 0; i < c.size(); ++i) p.samples[i] = cplx(0.0, 1.0) * c[i];
    return p;
}

}  // namespace wallindex
