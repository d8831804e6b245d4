#include "wallindex/rsa.hpp"

#include <cmath>

namespace wallindex {

const char* to_string(RsaForm f) {
    return f == RsaForm::a_hat_plus ? "a_hat_plus" : "a_hat_minus";
}

namespace {

cplx wall_top_integral(const MixedForm& m) {
    const int top = m.grid().dim();
    if (!m.has(top)) return {};
    return integrate(m.part(top), Domain::wall);
}

}  // namespace

cplx generalized_rsa(const WallData& w, RsaForm form, int quadrature_order) {
    w.validate();
    const Form a_plus = wall_connection(w, Side::plus);
    const Form a_minus = wall_connection(w, Side::minus);
    const MixedForm tch = transgression(InvariantPolynomial::chern_character(), a_plus, a_minus,
                                        quadrature_order);
    const Side a_hat_side = form == RsaForm::a_hat_plus ? Side::plus : Side::minus;
    const Side ch_side = form == RsaForm::a_hat_plus ? Side::minus : Side::plus;
    MixedForm integrand = wedge(wall_a_hat(w, a_hat_side), tch);
    if (w.has_frame_jump()) {
        const MixedForm ta = transgression(InvariantPolynomial::a_hat(),
                                           wall_frame_connection(w, Side::plus),
                                           wall_frame_connection(w, Side::minus),
                                           quadrature_order);
        integrand = integrand + wedge(ta, wall_chern_character(w, ch_side));
    }
    return -2.0 * wall_top_integral(integrand);
}

cplx rsa_reduced(const WallData& w, int quadrature_order) {
    w.validate();
    if (w.has_frame_jump()) {
        throw std::invalid_argument("rsa_reduced: the frame connection must not jump");
    }
    const MixedForm tch = transgression(InvariantPolynomial::chern_character(),
                                        wall_connection(w, Side::plus),
                                        wall_connection(w, Side::minus), quadrature_order);
    return -2.0 * wall_top_integral(wedge(wall_a_hat(w, Side::plus), tch));
}

cplx metric_correction_term(const WallData& w, int quadrature_order) {
    w.validate();
    // flat product metric: the regularized connection is the wall connection itself
    const Form g = wall_frame_connection(w, Side::minus);
    const MixedForm ta = transgression(InvariantPolynomial::a_hat(), g, g, quadrature_order);
    const MixedForm dch = wall_chern_character(w, Side::plus) - wall_chern_character(w, Side::minus);
    return wall_top_integral(wedge(ta, dch));
}

std::optional<double> RSAReport::channel(const std::string& name) const {
    if (name == "rsa_a_hat_plus") return rsa_plus.real();
    if (name == "rsa_a_hat_minus") return rsa_minus.real();
    if (name == "rsa_reduced" && reduced) return reduced->real();
    if (name == "eta_spectral") return eta_spectral;
    if (name == "eta_seeley") return eta_seeley;
    return std::nullopt;
}

RSAReport rsa_report(const WallData& w, const EtaOptions& eta, int quadrature_order) {
    RSAReport rep;
    rep.rsa_plus = generalized_rsa(w, RsaForm::a_hat_plus, quadrature_order);
    rep.rsa_minus = generalized_rsa(w, RsaForm::a_hat_minus, quadrature_order);
    if (!w.has_frame_jump()) rep.reduced = rsa_reduced(w, quadrature_order);
    rep.correction = metric_correction_term(w, quadrature_order);

    rep.max_imaginary = std::max({std::abs(rep.rsa_plus.imag()), std::abs(rep.rsa_minus.imag()),
                                  std::abs(rep.correction.imag())});
    if (rep.reduced) rep.max_imaginary = std::max(rep.max_imaginary, std::abs(rep.reduced->imag()));

    if (w.grid.dim() == 2) {
        const CircleProfile lo = wall_profile(w, Side::minus);
        const CircleProfile hi = wall_profile(w, Side::plus);
        rep.eta_plus = eta_circle_spectral(hi, eta);
        rep.eta_minus = eta_circle_spectral(lo, eta);
        const double orient = w.grid.wall_grid().orientation();
        rep.eta_spectral = orient * (rep.eta_plus->value - rep.eta_minus->value);
        rep.eta_seeley = orient * eta_relative_seeley_1d(w, straight_line_family(lo, hi));
        rep.spectral_flow =
            static_cast<int>(std::lround((rep.rsa_plus.real() - *rep.eta_spectral) / 2.0));
    }

    for (const char* name :
         {"rsa_a_hat_plus", "rsa_a_hat_minus", "rsa_reduced", "eta_seeley", "eta_spectral"}) {
        if (rep.channel(name)) rep.channels.emplace_back(name);
    }
    const std::size_t k = rep.channels.size();
    rep.residuals.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            rep.residuals[i][j] = std::abs(*rep.channel(rep.channels[i]) - *rep.channel(rep.channels[j]));
        }
    }
    return rep;
}

}  // namespace wallindex
