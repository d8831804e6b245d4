#include "wallindex/charclasses.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wallindex/quadrature.hpp"

namespace wallindex {

namespace {
constexpr double kPi = std::numbers::pi;
}

InvariantPolynomial InvariantPolynomial::chern_character() {
    InvariantPolynomial v;
    v.kind = Kind::chern_character;
    v.name = "chern-character";
    v.degree0_is_rank = true;
    v.coeff = {0.0, cplx(0.0, 1.0 / (2.0 * kPi)), cplx(-1.0 / (8.0 * kPi * kPi), 0.0)};
    return v;
}

InvariantPolynomial InvariantPolynomial::a_hat() {
    InvariantPolynomial v;
    v.kind = Kind::a_hat;
    v.name = "a-hat";
    v.degree0 = 1.0;
    v.coeff = {0.0, 0.0, cplx(1.0 / (192.0 * kPi * kPi), 0.0)};
    return v;
}

InvariantPolynomial InvariantPolynomial::custom(std::string name, cplx c0, cplx c1, cplx c2) {
    InvariantPolynomial v;
    v.kind = Kind::custom;
    v.name = std::move(name);
    v.degree0 = c0;
    v.coeff = {0.0, c1, c2};
    return v;
}

Form curvature(const Form& a) {
    if (a.degree() != 1) throw std::invalid_argument("curvature: connection must be a 1-form");
    return ext_d(a) + wedge(a, a);
}

MixedForm evaluate(const InvariantPolynomial& v, const Form& f) {
    if (f.degree() != 2) throw std::invalid_argument("invariant polynomial: expected a 2-form");
    const Grid& g = f.grid();
    MixedForm out(g, ValueType::scalar());
    out.set(constant_form(g, v.constant_term(f.rank())));
    Form power = f;  // F^(k-1) once k >= 2
    for (int k = 1; k <= InvariantPolynomial::kMaxOrder && 2 * k <= g.dim(); ++k) {
        if (k > 2) power = wedge(power, f);
        if (v.coefficient(k) == cplx{}) continue;
        out.set(v.coefficient(k) * (k == 1 ? trace(f) : trace_wedge(power, f)));
    }
    return out;
}

MixedForm chern_character(const Form& f) {
    return evaluate(InvariantPolynomial::chern_character(), f);
}

MixedForm a_hat(const Form& r) {
    if (r.value().space != ValueSpace::frame) {
        throw std::invalid_argument("a_hat: curvature must be frame (so(n)) valued");
    }
    return evaluate(InvariantPolynomial::a_hat(), r);
}

MixedForm pontryagin_density(const Form& r, const Form& f) {
    return wedge(a_hat(r), chern_character(f));
}

Form polarization_eval(const InvariantPolynomial& v, int k, std::span<const Form> args) {
    if (k < 1 || k > InvariantPolynomial::kMaxOrder) {
        throw std::invalid_argument("polarization_eval: order must be 1 or 2");
    }
    if (static_cast<int>(args.size()) != k) {
        throw std::invalid_argument("polarization_eval: expected k arguments");
    }
    const Grid& g = args[0].grid();
    int total = 0;
    for (const auto& a : args) {
        if (!a.grid().same_points(g)) throw std::invalid_argument("polarization_eval: grid mismatch");
        if (a.rank() != args[0].rank() && a.rank() != 1 && args[0].rank() != 1) {
            throw std::invalid_argument("polarization_eval: mismatched value spaces");
        }
        total += a.degree();
    }
    if (total > g.dim()) throw std::invalid_argument("polarization_eval: degree overflow");

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    Form acc(g, total, ValueType::scalar());
    int count = 0;
    do {
        // Koszul sign: inversions among odd-degree slots
        int inv = 0;
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (order[i] > order[j] && args[order[i]].degree() % 2 == 1 &&
                    args[order[j]].degree() % 2 == 1) {
                    ++inv;
                }
            }
        }
        Form prod = args[order[0]];
        for (int i = 1; i + 1 < k; ++i) prod = wedge(prod, args[order[i]]);
        const Form tr = k == 1 ? trace(prod) : trace_wedge(prod, args[order[k - 1]]);
        acc = acc + (inv % 2 == 0 ? 1.0 : -1.0) * tr;
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return (v.coefficient(k) / static_cast<double>(count)) * acc;
}

MixedForm transgression(const InvariantPolynomial& v, const Form& a1, const Form& a0,
                        int order) {
    if (a1.degree() != 1 || a0.degree() != 1) {
        throw std::invalid_argument("transgression: connections must be 1-forms");
    }
    if (!(a1.value() == a0.value()) || !a1.grid().same_points(a0.grid())) {
        throw std::invalid_argument("transgression: mismatched spaces");
    }
    const Grid& g = a1.grid();
    const Form eta = a1 - a0;
    MixedForm out(g, ValueType::scalar());
    if (eta.is_zero()) return out;

    const auto rule = gauss_legendre(order);
    cplx moment[3] = {};  // sum_q w_q t_q^j
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        moment[0] += rule.weights[q];
        moment[1] += rule.weights[q] * t;
        moment[2] += rule.weights[q] * t * t;
    }
    if (v.coefficient(1) != cplx{}) {
        const Form args[] = {eta};
        out.add(moment[0] * polarization_eval(v, 1, args));
    }
    // F_t = F_0 + t D_0 eta + t^2 eta ^ eta enters the k = 2 term linearly, so
    // the t-quadrature acts on three fixed forms (dimension >= 3 only)
    if (g.dim() >= 3 && v.coefficient(2) != cplx{}) {
        const Form parts[] = {curvature(a0), ext_d(eta) + wedge(a0, eta) + wedge(eta, a0),
                              wedge(eta, eta)};
        for (int j = 0; j < 3; ++j) {
            const Form args[] = {eta, parts[j]};
            out.add((2.0 * moment[j]) * polarization_eval(v, 2, args));
        }
    }
    return out;
}

}  // namespace wallindex
