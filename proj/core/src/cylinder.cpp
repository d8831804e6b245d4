#include "wallindex/cylinder.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "wallindex/quadrature.hpp"

namespace wallindex {

// ---------------------------------------------------------------------------
// profile

namespace {

double bump(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return std::exp(-1.0 / (u * (1.0 - u)));
}

double bump_integral(double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(bump, a, b, 10, 1e-13);
}

// m-th derivative of b = exp(g), g = -1/u - 1/(1-u), from b' = g' b.
double bump_derivative(double u, int m) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    if (m == 0) return bump(u);
    std::vector<double> gd(static_cast<std::size_t>(m) + 1);  // gd[j] = g^{(j)}
    double fact = 1.0;
    for (int j = 1; j <= m; ++j) {
        fact *= j;
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        gd[j] = -sgn * fact / std::pow(u, j + 1) - fact / std::pow(1.0 - u, j + 1);
    }
    std::vector<double> bd(static_cast<std::size_t>(m) + 1);
    bd[0] = bump(u);
    if (bd[0] == 0.0) return 0.0;
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        double binom = 1.0;  // C(k-1, i)
        for (int i = 0; i < k; ++i) {
            acc += binom * gd[i + 1] * bd[k - 1 - i];
            binom = binom * (k - 1 - i) / (i + 1);
        }
        bd[k] = acc;
    }
    return bd[m];
}

}  // namespace

SmoothProfile SmoothProfile::bump() {
    SmoothProfile p;
    p.id_ = "bump-integral";
    p.bump_norm_ = bump_integral(0.0, 1.0);
    return p;
}

SmoothProfile SmoothProfile::custom(std::string id, std::function<double(double)> value,
                                    std::function<double(double)> derivative,
                                    std::function<double(double)> inverse) {
    if (!value || !derivative) throw std::invalid_argument("profile: value and derivative required");
    SmoothProfile p;
    p.id_ = std::move(id);
    p.value_ = std::move(value);
    p.derivative_ = std::move(derivative);
    p.inverse_ = std::move(inverse);
    return p;
}

double SmoothProfile::value(double t) const {
    if (value_) return value_(t);
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    // integrate over the shorter side for accuracy near t = 1
    if (t <= 0.5) return bump_integral(0.0, t) / bump_norm_;
    return 1.0 - bump_integral(t, 1.0) / bump_norm_;
}

double SmoothProfile::derivative(double t, int m) const {
    if (m < 1) throw std::invalid_argument("profile: derivative order must be >= 1");
    if (derivative_) {
        if (m != 1) throw std::invalid_argument("profile: custom profiles provide f' only");
        return derivative_(t);
    }
    if (m > 8) throw std::invalid_argument("profile: derivative order above 8");
    return bump_derivative(t, m - 1) / bump_norm_;
}

double SmoothProfile::inverse(double y) const {
    if (inverse_) return inverse_(y);
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    auto f = [this, y](double t) { return value(t) - y; };
    std::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        f, 0.0, 1.0, -y, 1.0 - y, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// configuration

void CylinderConfig::validate() const {
    if (!wall.is_wall_grid()) throw std::invalid_argument("cylinder: grid must be a wall grid");
    if (!(epsilon > 0.0)) throw std::invalid_argument("cylinder: epsilon must be positive");
    if (transverse_points < 8) throw std::invalid_argument("cylinder: too few transverse points");
    for (const Form* b : {&b1, &b2, &b3}) {
        if (b->degree() != 1 || !b->grid().same_points(wall) || !(b->value() == b1.value())) {
            throw std::invalid_argument("cylinder: B forms must be 1-forms on the wall grid with one value type");
        }
    }
    for (const MixedForm* o : {&omega1, &omega2}) {
        if (!o->grid().same_points(wall) || o->value().space != ValueSpace::scalar) {
            throw std::invalid_argument("cylinder: omega must be a scalar form on the wall grid");
        }
        for (int p = 1; p <= o->max_degree(); p += 2) {
            if (o->has(p)) throw std::invalid_argument("cylinder: omega must have even degree");
        }
    }
}

CylinderConfig paste_cylinder(const WallData& w, double epsilon, int transverse_points) {
    w.validate();
    if (w.has_frame_jump()) {
        throw std::invalid_argument("paste_cylinder: frame connection jumps; use two_cylinder_rsa");
    }
    const Form b1 = wall_connection(w, Side::minus);
    const Form b3 = wall_connection(w, Side::plus) - b1;
    const Grid wg = b1.grid();
    CylinderConfig c{wg,
                     epsilon,
                     transverse_points,
                     b1,
                     Form(wg, 1, b1.value()),
                     b3,
                     wall_a_hat(w, Side::minus),
                     MixedForm(wg, ValueType::scalar())};
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// direct collar integral

namespace {

// X = T + ds ^ N on the collar, with T and N forms on the wall grid. Parts that
// would exceed the wall dimension are absent (identically zero).
struct CollarForm {
    int degree = 0;
    std::optional<Form> t;
    std::optional<Form> n;
};

std::optional<Form> safe_wedge(const std::optional<Form>& a, const std::optional<Form>& b) {
    if (!a || !b) return std::nullopt;
    if (a->degree() + b->degree() > a->grid().dim()) return std::nullopt;
    return wedge(*a, *b);
}

std::optional<Form> add(std::optional<Form> a, const std::optional<Form>& b) {
    if (!b) return a;
    if (!a) return b;
    return *a + *b;
}

// (T1 + ds N1) ^ (T2 + ds N2) = T1 T2 + ds ^ (N1 T2 + (-1)^p1 T1 N2)
CollarForm collar_wedge(const CollarForm& a, const CollarForm& b) {
    CollarForm out;
    out.degree = a.degree + b.degree;
    out.t = safe_wedge(a.t, b.t);
    std::optional<Form> n1 = safe_wedge(a.n, b.t);
    std::optional<Form> n2 = safe_wedge(a.t, b.n);
    if (n2 && a.degree % 2 == 1) n2 = -1.0 * *n2;
    out.n = add(n1, n2);
    return out;
}

CollarForm collar_trace(const CollarForm& a) {
    CollarForm out;
    out.degree = a.degree;
    if (a.t) out.t = trace(*a.t);
    if (a.n) out.n = trace(*a.n);
    return out;
}

// Normal (ds) part of the top-degree component of omega ^ V(F).
std::optional<Form> top_normal_part(const InvariantPolynomial& v, const CollarForm& f,
                                    const MixedForm& omega) {
    const int dim_wall = f.n->grid().dim();
    const int n = dim_wall + 1;
    std::optional<Form> acc;
    CollarForm power = f;
    for (int k = 1; k <= InvariantPolynomial::kMaxOrder && 2 * k <= n; ++k) {
        if (k > 1) power = collar_wedge(power, f);
        if (v.coefficient(k) == cplx{}) continue;
        const int q = n - 2 * k;  // degree of the omega part that completes the top form
        if (!omega.has(q)) continue;
        const CollarForm tr = collar_trace(power);
        if (!tr.n) continue;
        // omega_q ^ ds ^ N = ds ^ omega_q ^ N for even q
        acc = add(acc, v.coefficient(k) * wedge(omega.part(q), *tr.n));
    }
    return acc;
}

// Tangential curvature d A + A ^ A on the wall grid, absent on a 1D wall.
std::optional<Form> wall_field_strength(const Form& a) {
    if (a.grid().dim() < 2) return std::nullopt;
    return curvature(a);
}

MixedForm omega_at(const CylinderConfig& c, double s) {
    MixedForm o = c.omega1;
    if (s != 0.0) o = o + s * c.omega2;
    return o;
}

// integral over the wall of the integrand at height s with normal part `e`
cplx slice(const CylinderConfig& c, double s, double f_val, const Form& e) {
    const Form a = c.b1 + s * c.b2 + f_val * c.b3;
    CollarForm fs;
    fs.degree = 2;
    fs.t = wall_field_strength(a);
    fs.n = e;
    const auto top = top_normal_part(c.polynomial, fs, omega_at(c, s));
    if (!top) return {};
    return integrate(*top, Domain::wall);
}

}  // namespace

cplx cylinder_integral(const CylinderConfig& c) {
    c.validate();
    const double eps = c.epsilon;
    cplx total{};
    // eps^-1 f'(s/eps) B3 part, with t = f(s/eps)
    if (!c.b3.is_zero()) {
        const auto rule = gauss_legendre(c.transverse_points);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = rule.nodes[q];
            const double s = eps * c.profile.inverse(t);
            total += rule.weights[q] * slice(c, s, t, c.b3);
        }
    }
    // B2 part, bounded integrand on [0, eps]
    if (!c.b2.is_zero()) {
        const auto rule = gauss_legendre(c.transverse_points, 0.0, eps);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = rule.nodes[q];
            total += rule.weights[q] * slice(c, s, c.profile.value(s / eps), c.b2);
        }
    }
    return total;
}

cplx cylinder_limit(const CylinderConfig& c, int quadrature_order) {
    c.validate();
    const MixedForm tv = transgression(c.polynomial, c.b1 + c.b3, c.b1, quadrature_order);
    const MixedForm prod = wedge(c.omega1, tv);
    const int top = c.wall.dim();
    if (!prod.has(top)) return {};
    return integrate(prod.part(top), Domain::wall);
}

const char* to_string(CollarOrder o) {
    return o == CollarOrder::frame_first ? "frame-first" : "gauge-first";
}

TwoCollarResult two_cylinder_rsa(const WallData& w, CollarOrder order, double epsilon,
                                 int transverse_points) {
    w.validate();
    const Form a_lo = wall_connection(w, Side::minus);
    const Form a_hi = wall_connection(w, Side::plus);
    const Form g_lo = wall_frame_connection(w, Side::minus);
    const Form g_hi = wall_frame_connection(w, Side::plus);
    const Grid wg = a_lo.grid();
    const MixedForm none(wg, ValueType::scalar());

    auto frame_collar = [&](Side gauge_side) {
        return CylinderConfig{wg, epsilon, transverse_points, g_lo, Form(wg, 1, g_lo.value()),
                              g_hi - g_lo, wall_chern_character(w, gauge_side), none,
                              InvariantPolynomial::a_hat()};
    };
    auto gauge_collar = [&](Side frame_side) {
        return CylinderConfig{wg, epsilon, transverse_points, a_lo, Form(wg, 1, a_lo.value()),
                              a_hi - a_lo, wall_a_hat(w, frame_side), none,
                              InvariantPolynomial::chern_character()};
    };
    TwoCollarResult r;
    if (order == CollarOrder::frame_first) {
        r.first = cylinder_integral(frame_collar(Side::minus));
        r.second = cylinder_integral(gauge_collar(Side::plus));
    } else {
        r.first = cylinder_integral(gauge_collar(Side::minus));
        r.second = cylinder_integral(frame_collar(Side::plus));
    }
    r.total = -2.0 * (r.first + r.second);
    return r;
}

std::vector<SweepPoint> epsilon_sweep(const CylinderConfig& c, const std::vector<double>& epsilons) {
    std::vector<SweepPoint> out;
    out.reserve(epsilons.size());
    for (double e : epsilons) {
        CylinderConfig ce = c;
        ce.epsilon = e;
        out.push_back({e, cylinder_integral(ce)});
    }
    return out;
}

}  // namespace wallindex
