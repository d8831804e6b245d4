#include "wallindex/wall.hpp"

#include <array>
#include <optional>
#include <stdexcept>

#include "wallindex/fields.hpp"

namespace wallindex {

WallData WallData::trivial(const Grid& grid, int rank) {
    const int n = grid.dim();
    return WallData{grid,
                    rank,
                    Form(grid, 1, ValueType::gauge(rank)),
                    Form(grid, 1, ValueType::gauge(rank)),
                    Form(grid, 1, ValueType::frame(n)),
                    Form(grid, 1, ValueType::frame(n)),
                    0,
                    {}};
}

void WallData::validate() const {
    if (grid.is_wall_grid() || !grid.has_wall()) {
        throw std::invalid_argument("wall data: grid must be a manifold grid with a wall");
    }
    const ValueType g = ValueType::gauge(rank);
    const ValueType f = ValueType::frame(grid.dim());
    auto check = [&](const Form& a, ValueType vt, const char* name) {
        if (a.degree() != 1 || !(a.value() == vt) || !a.grid().same_points(grid)) {
            throw std::invalid_argument(std::string("wall data: ") + name +
                                        " must be a 1-form on the manifold grid with matching values");
        }
    };
    check(a_minus, g, "a_minus");
    check(gauge_jump, g, "gauge_jump");
    check(gamma_minus, f, "gamma_minus");
    check(gamma_jump, f, "gamma_jump");
    if (metric.kind != "flat-product") {
        throw std::invalid_argument("wall data: only flat-product metrics are supported");
    }
}

namespace {

int relative_plane(const Grid& g, std::size_t p) {
    const int w = g.wall_axis();
    const int n = g.points(w);
    const int i = static_cast<int>((p / g.stride(w)) % static_cast<std::size_t>(n));
    return ((i - g.wall_index()) % n + n) % n;
}

// Multiplies every coefficient on plane l by profile[l].
Form scale_planes(const Form& a, const std::vector<double>& profile) {
    const Grid& g = a.grid();
    Form out(g, a.degree(), a.value());
    const std::size_t blk = a.block();
    for (const auto& [m, data] : a.components()) {
        std::vector<cplx> scaled(data);
        for (std::size_t p = 0; p < g.size(); ++p) {
            const double f = profile[static_cast<std::size_t>(relative_plane(g, p))];
            for (std::size_t e = 0; e < blk; ++e) scaled[p * blk + e] *= f;
        }
        out.set_component(m, std::move(scaled));
    }
    return out;
}

std::vector<double> profile(const Grid& g, Side side, double (*fn)(const Grid&, int, Side)) {
    const int n = g.points(g.wall_axis());
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) v[static_cast<std::size_t>(l)] = fn(g, l, side);
    return v;
}

Form normal_differential(const Grid& g) {
    return constant_one_form(g, ValueType::scalar(), g.wall_axis(), {cplx(1.0)});
}

Form winding_form(const WallData& w) {
    const int t = w.tangential_axis();
    const double flux = kTwoPi * w.winding / w.grid.length(t);
    std::vector<cplx> m(static_cast<std::size_t>(w.rank) * w.rank);
    for (int i = 0; i < w.rank; ++i) m[static_cast<std::size_t>(i) * w.rank + i] = cplx(0.0, -flux);
    return constant_one_form(w.grid, ValueType::gauge(w.rank), t, m);
}

// Connection smooth + h * jump (+ ramp * winding) with its curvature.
Form cut_connection(const Form& smooth, const Form& jump, const Form* winding, Side side) {
    const Grid& g = smooth.grid();
    Form a = smooth;
    if (!jump.is_zero()) a = a + scale_planes(jump, profile(g, side, wall_sawtooth));
    if (winding) a = a + scale_planes(*winding, profile(g, side, wall_ramp));
    return a;
}

Form cut_curvature(const Form& smooth, const Form& jump, const Form* winding, Side side) {
    const Grid& g = smooth.grid();
    const double inv_len = 1.0 / g.length(g.wall_axis());
    const Form ds = normal_differential(g);
    Form f = ext_d(smooth);
    if (!jump.is_zero()) {
        f = f + scale_planes(ext_d(jump), profile(g, side, wall_sawtooth));
        f = f + (-inv_len) * wedge(ds, jump);
    }
    if (winding) f = f + inv_len * wedge(ds, *winding);
    const Form a = cut_connection(smooth, jump, winding, side);
    return f + wedge(a, a);
}

}  // namespace

double wall_sawtooth(const Grid& grid, int l, Side side) {
    if (l == 0) return side == Side::plus ? 1.0 : 0.0;
    return 1.0 - static_cast<double>(l) / grid.points(grid.wall_axis());
}

double wall_ramp(const Grid& grid, int l, Side /*side*/) {
    // The minus-side wall value is expressed in the plus chart, where the
    // clutching term is gauged away.
    if (l == 0) return 0.0;
    return static_cast<double>(l) / grid.points(grid.wall_axis());
}

Form bulk_connection(const WallData& w, Side side) {
    if (w.winding == 0) return cut_connection(w.a_minus, w.gauge_jump, nullptr, side);
    const Form wf = winding_form(w);
    return cut_connection(w.a_minus, w.gauge_jump, &wf, side);
}

Form bulk_frame_connection(const WallData& w, Side side) {
    return cut_connection(w.gamma_minus, w.gamma_jump, nullptr, side);
}

Form bulk_curvature(const WallData& w, Side side) {
    if (w.winding == 0) return cut_curvature(w.a_minus, w.gauge_jump, nullptr, side);
    const Form wf = winding_form(w);
    return cut_curvature(w.a_minus, w.gauge_jump, &wf, side);
}

Form bulk_frame_curvature(const WallData& w, Side side) {
    return cut_curvature(w.gamma_minus, w.gamma_jump, nullptr, side);
}

Form wall_connection(const WallData& w, Side side) {
    return restrict_to_wall(side == Side::plus ? w.a_minus + w.gauge_jump : w.a_minus);
}

Form wall_frame_connection(const WallData& w, Side side) {
    return restrict_to_wall(side == Side::plus ? w.gamma_minus + w.gamma_jump : w.gamma_minus);
}

namespace {

MixedForm wall_characteristic(const InvariantPolynomial& v, const Form& connection) {
    const Grid& g = connection.grid();
    if (g.dim() >= 2) return evaluate(v, curvature(connection));
    MixedForm out(g, ValueType::scalar());
    out.set(constant_form(g, v.constant_term(connection.rank())));
    return out;
}

}  // namespace

MixedForm wall_chern_character(const WallData& w, Side side) {
    return wall_characteristic(InvariantPolynomial::chern_character(), wall_connection(w, side));
}

MixedForm wall_a_hat(const WallData& w, Side side) {
    return wall_characteristic(InvariantPolynomial::a_hat(), wall_frame_connection(w, side));
}

namespace {

Form frozen(const Form& smooth, const Form& jump, const Form* winding, double h) {
    const Grid& g = smooth.grid();
    const double inv_len = 1.0 / g.length(g.wall_axis());
    const Form ds = normal_differential(g);
    Form f = ext_d(smooth);
    Form a = smooth;
    if (!jump.is_zero()) {
        f = f + h * ext_d(jump) + (-inv_len) * wedge(ds, jump);
        a = a + h * jump;
    }
    if (winding) f = f + inv_len * wedge(ds, *winding);
    return f + wedge(a, a);
}

bool has_frame(const WallData& w) { return !w.gamma_minus.is_zero() || !w.gamma_jump.is_zero(); }

// W[j][l] = int_0^L (1 - s/L)^j phi_l(s) ds for the trigonometric cardinal
// functions phi_l of an N-point periodic grid (Nyquist mode split evenly).
std::vector<std::vector<double>> sawtooth_moment_weights(int n, double len, int max_power) {
    // I[m](k) = int_0^1 u^m e^{2 pi i k u} du
    auto moment = [](int m, int k) {
        if (k == 0) return cplx(1.0 / (m + 1));
        const cplx ia(0.0, kTwoPi * k);
        cplx prev{};  // I_0 = 0 since e^{ia} = 1
        for (int j = 1; j <= m; ++j) prev = (1.0 - static_cast<double>(j) * prev) / ia;
        return prev;
    };
    std::vector<std::vector<double>> w(static_cast<std::size_t>(max_power) + 1,
                                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 0; j <= max_power; ++j) {
        // (1 - u)^j = sum_m C(j, m) (-1)^m u^m
        std::vector<cplx> mom(static_cast<std::size_t>(n) + 1);
        for (int k = -n / 2; k <= n / 2; ++k) {
            cplx acc{};
            double binom = 1.0;
            for (int m = 0; m <= j; ++m) {
                acc += binom * (m % 2 == 0 ? 1.0 : -1.0) * moment(m, k);
                binom = binom * (j - m) / (m + 1);
            }
            mom[static_cast<std::size_t>(k + n / 2)] = acc;
        }
        for (int l = 0; l < n; ++l) {
            cplx acc{};
            for (int k = -n / 2; k <= n / 2; ++k) {
                const double split = (std::abs(k) == n / 2) ? 0.5 : 1.0;
                acc += split * std::polar(1.0, -kTwoPi * k * l / n) *
                       mom[static_cast<std::size_t>(k + n / 2)];
            }
            w[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] = len * acc.real() / n;
        }
    }
    return w;
}

Form top_pontryagin(const WallData& w, const Form& f, const std::optional<Form>& r) {
    const int n = w.grid.dim();
    if (r) return pontryagin_density(*r, f).part(n);
    return chern_character(f).part(n);
}

}  // namespace

Form frozen_curvature(const WallData& w, double h) {
    if (w.winding == 0) return frozen(w.a_minus, w.gauge_jump, nullptr, h);
    const Form wf = winding_form(w);
    return frozen(w.a_minus, w.gauge_jump, &wf, h);
}

Form frozen_frame_curvature(const WallData& w, double h) {
    return frozen(w.gamma_minus, w.gamma_jump, nullptr, h);
}

cplx bulk_pontryagin_integral(const WallData& w) {
    w.validate();
    const Grid& g = w.grid;
    const int ax = g.wall_axis();
    const int n = g.points(ax);
    constexpr int kNodes = 5;  // integrand has degree <= 4 in h
    const auto moments = sawtooth_moment_weights(n, g.length(ax), kNodes - 1);

    // Lagrange basis on h_m = m / 4, expanded in powers of h
    std::array<double, kNodes> nodes{};
    for (int m = 0; m < kNodes; ++m) nodes[m] = m / 4.0;
    std::array<std::array<double, kNodes>, kNodes> basis{};  // basis[m][j]: coefficient of h^j
    for (int m = 0; m < kNodes; ++m) {
        std::array<double, kNodes> poly{};
        poly[0] = 1.0;
        int deg = 0;
        for (int q = 0; q < kNodes; ++q) {
            if (q == m) continue;
            const double inv = 1.0 / (nodes[m] - nodes[q]);
            std::array<double, kNodes> next{};
            for (int j = 0; j <= deg; ++j) {
                next[j + 1] += poly[j] * inv;
                next[j] -= poly[j] * nodes[q] * inv;
            }
            poly = next;
            ++deg;
        }
        basis[m] = poly;
    }

    const double transverse = g.cell_volume() / g.spacing(ax);
    const Mask top = static_cast<Mask>((1u << g.dim()) - 1u);
    cplx total{};
    for (int m = 0; m < kNodes; ++m) {
        std::vector<double> plane_weight(static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < kNodes; ++j) {
            for (int l = 0; l < n; ++l) {
                plane_weight[static_cast<std::size_t>(l)] += basis[m][j] * moments[j][l];
            }
        }
        std::optional<Form> r;
        if (has_frame(w)) r = frozen_frame_curvature(w, nodes[m]);
        const Form p = top_pontryagin(w, frozen_curvature(w, nodes[m]), r);
        auto c = p.component(top);
        if (c.empty()) continue;
        for (std::size_t pt = 0; pt < g.size(); ++pt) {
            total += plane_weight[static_cast<std::size_t>(relative_plane(g, pt))] * c[pt];
        }
    }
    return static_cast<double>(g.orientation()) * transverse * total;
}

cplx bulk_pontryagin_trapezoid(const WallData& w) {
    w.validate();
    cplx total{};
    for (Side side : {Side::plus, Side::minus}) {
        std::optional<Form> r;
        if (has_frame(w)) r = bulk_frame_curvature(w, side);
        const Form top = top_pontryagin(w, bulk_curvature(w, side), r);
        total += integrate(top, side == Side::plus ? Domain::half_plus : Domain::half_minus);
    }
    return total;
}

}  // namespace wallindex
