#include "wallindex/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>

#include "wallindex/fields.hpp"

extern "C" void openblas_set_num_threads(int);

namespace wallindex {

namespace {

Grid make_grid(const ManifoldSpec& m) {
    return Grid(m.points, m.lengths, m.wall_axis, m.wall_index, m.orientation);
}

std::vector<cplx> scalar_matrix(int rank, cplx v) {
    std::vector<cplx> m(static_cast<std::size_t>(rank) * rank);
    for (int i = 0; i < rank; ++i) m[static_cast<std::size_t>(i) * rank + i] = v;
    return m;
}

Check measure(std::string name, double value, double tol) {
    return Check{std::move(name), value, tol, value <= tol};
}

Measurement info(std::string name, double value) { return Measurement{std::move(name), value}; }

double max_norm(const MixedForm& a) { return a.max_norm(); }

void forms_suite(const ExperimentConfig& c, SuiteResult& r) {
    const Tolerances tol = c.scaled_tolerances();
    const Grid g = make_grid(c.manifold);
    const int n = g.dim();
    std::mt19937_64 rng(c.seed);
    const Form f0 = random_scalar_form(g, 0, rng);
    r.checks.push_back(measure("d_d_zero_form", ext_d(ext_d(f0)).max_norm(), tol.structural));
    if (n == 4) {
        const Form a1 = random_scalar_form(g, 1, rng);
        r.checks.push_back(measure("d_d_one_form", ext_d(ext_d(a1)).max_norm(), tol.structural));
    }
    const Form b1 = random_scalar_form(g, 1, rng);
    const Form leibniz = ext_d(wedge(f0, b1)) - (wedge(ext_d(f0), b1) + wedge(f0, ext_d(b1)));
    r.checks.push_back(measure("graded_leibniz", leibniz.max_norm(), tol.identity));
    const Form b2 = random_scalar_form(g, 1, rng);
    r.checks.push_back(measure("wedge_anticommutativity",
                               (wedge(b1, b2) + wedge(b2, b1)).max_norm(), tol.structural));
    const Form top_minus_one = random_scalar_form(g, n - 1, rng);
    r.checks.push_back(measure("stokes", std::abs(integrate(ext_d(top_minus_one))), tol.identity));
    const Form top = random_scalar_form(g, n, rng);
    const cplx halves = integrate(top, Domain::half_plus) + integrate(top, Domain::half_minus);
    r.checks.push_back(measure("half_domain_additivity", std::abs(halves - integrate(top)),
                               tol.identity));
}

void transgression_suite(const ExperimentConfig& c, SuiteResult& r) {
    const Tolerances tol = c.scaled_tolerances();
    const WallData w = build_wall(c);
    const Form a0 = w.a_minus;
    const Form a1 = w.a_minus + w.gauge_jump;
    const auto ch = InvariantPolynomial::chern_character();
    const MixedForm t16 = transgression(ch, a1, a0, 16);
    const MixedForm dch = chern_character(curvature(a1)) - chern_character(curvature(a0));
    r.checks.push_back(measure("chern_transgression", max_norm(ext_d(t16) - dch), tol.identity));
    const MixedForm t32 = transgression(ch, a1, a0, 32);
    r.checks.push_back(measure("chern_quadrature_convergence", max_norm(t32 - t16), tol.structural));
    if (!w.gamma_minus.is_zero() || !w.gamma_jump.is_zero()) {
        const Form g0 = w.gamma_minus;
        const Form g1 = w.gamma_minus + w.gamma_jump;
        const MixedForm ta = transgression(InvariantPolynomial::a_hat(), g1, g0, 16);
        const MixedForm da = a_hat(curvature(g1)) - a_hat(curvature(g0));
        r.checks.push_back(measure("a_hat_transgression", max_norm(ext_d(ta) - da), tol.identity));
    }
}

void rsa_suite(const ExperimentConfig& c, SuiteResult& r) {
    const Tolerances tol = c.scaled_tolerances();
    const WallData w = build_wall(c);
    RSAReport rep = rsa_report(w);
    const double plus = rep.rsa_plus.real();
    r.values.push_back(info("rsa_a_hat_plus", plus));
    r.values.push_back(info("rsa_a_hat_minus", rep.rsa_minus.real()));
    r.checks.push_back(measure("rsa_forms_agreement", std::abs(rep.rsa_plus - rep.rsa_minus), tol.rsa));
    if (rep.reduced) {
        r.checks.push_back(measure("rsa_reduced_agreement", std::abs(*rep.reduced - rep.rsa_plus),
                                   tol.structural));
    }
    r.checks.push_back(measure("metric_correction", std::abs(rep.correction), tol.structural));
    r.checks.push_back(measure("imaginary_parts", rep.max_imaginary, tol.imaginary));
    if (rep.eta_spectral) {
        r.values.push_back(info("eta_spectral", *rep.eta_spectral));
        r.values.push_back(info("eta_seeley", *rep.eta_seeley));
        r.values.push_back(info("spectral_flow", rep.spectral_flow));
        r.values.push_back(info("kernel_plus", rep.eta_plus->kernel_dimension));
        r.values.push_back(info("kernel_minus", rep.eta_minus->kernel_dimension));
        r.checks.push_back(measure("seeley_agreement", std::abs(*rep.eta_seeley - plus), tol.identity));
        r.checks.push_back(measure("spectral_agreement_mod_flow",
                                   std::abs(*rep.eta_spectral + 2.0 * rep.spectral_flow - plus),
                                   tol.spectral));
    }
    r.rsa = std::move(rep);
}

ExperimentConfig refined(const ExperimentConfig& c, int points) {
    ExperimentConfig out = c;
    const int base = c.manifold.points[static_cast<std::size_t>(c.manifold.wall_axis)];
    if ((c.manifold.wall_index * points) % base != 0) {
        throw std::runtime_error("index suite: wall plane does not lie on the refined grid with " +
                                 std::to_string(points) + " points");
    }
    out.manifold.wall_index = c.manifold.wall_index * points / base;
    std::fill(out.manifold.points.begin(), out.manifold.points.end(), points);
    return out;
}

void index_suite(const ExperimentConfig& c, SuiteResult& r) {
    const Tolerances tol = c.scaled_tolerances();
    IndexOptions opts;
    opts.discretization = c.index.discretization;
    opts.spectrum.threshold = c.index.threshold;
    opts.spectrum.method = c.index.method;
    std::optional<int> first_index;
    int spread = 0;
    for (std::size_t i = 0; i < c.index.points.size(); ++i) {
        const int pts = c.index.points[i];
        const WallData w = build_wall(refined(c, pts));
        IndexReport rep = index_predicted(w, opts);
        const std::string tag = "_n" + std::to_string(pts);
        r.values.push_back(info("bulk" + tag, rep.bulk.real()));
        r.values.push_back(info("predicted" + tag, rep.predicted));
        r.checks.push_back(measure("integrality_gap" + tag, rep.integrality_gap, tol.integrality));
        if (rep.spectral_index) {
            r.values.push_back(info("spectral_index" + tag, *rep.spectral_index));
            r.checks.push_back(measure("index_residual" + tag, *rep.residual, tol.integrality));
            r.checks.push_back(measure("pairing" + tag, rep.spectrum->pairing_residual, tol.pairing));
            if (!first_index) first_index = *rep.spectral_index;
            spread = std::max(spread, std::abs(*rep.spectral_index - *first_index));
        }
        r.index.push_back({pts, std::move(rep)});
    }
    if (first_index) r.checks.push_back(measure("refinement_stability", spread, 0.0));
}

void cylinder_suite(const ExperimentConfig& c, SuiteResult& r) {
    const Tolerances tol = c.scaled_tolerances();
    const WallData w = build_wall(c);
    const double eps_min = *std::min_element(c.cylinder.epsilons.begin(), c.cylinder.epsilons.end());
    const int nt = c.cylinder.transverse_points;
    if (!w.has_frame_jump()) {
        const CylinderConfig cyl = paste_cylinder(w, eps_min, nt);
        const cplx limit = cylinder_limit(cyl);
        r.sweep_limit = limit;
        r.sweep = epsilon_sweep(cyl, c.cylinder.epsilons);
        double worst = 0.0;
        for (const auto& p : r.sweep) worst = std::max(worst, std::abs(p.value - limit));
        r.values.push_back(info("collar_limit", limit.real()));
        r.checks.push_back(measure("collar_vs_limit", worst, tol.cylinder));
        r.checks.push_back(measure("collar_limit_vs_reduced",
                                   std::abs(-2.0 * limit - rsa_reduced(w)), tol.identity));
    }
    const cplx plus = generalized_rsa(w, RsaForm::a_hat_plus);
    const cplx minus = generalized_rsa(w, RsaForm::a_hat_minus);
    const TwoCollarResult ff = two_cylinder_rsa(w, CollarOrder::frame_first, eps_min, nt);
    const TwoCollarResult gf = two_cylinder_rsa(w, CollarOrder::gauge_first, eps_min, nt);
    r.values.push_back(info("two_collar_frame_first", ff.total.real()));
    r.values.push_back(info("two_collar_gauge_first", gf.total.real()));
    r.checks.push_back(measure("two_collar_vs_a_hat_plus", std::abs(ff.total - plus), tol.cylinder));
    r.checks.push_back(measure("two_collar_vs_a_hat_minus", std::abs(gf.total - minus), tol.cylinder));
    r.checks.push_back(measure("collar_order_independence", std::abs(ff.total - gf.total), tol.cylinder));
}

}  // namespace

WallData build_wall(const ExperimentConfig& c) {
    const Grid g = make_grid(c.manifold);
    const GaugeSpec& gs = c.gauge;
    WallData w = WallData::trivial(g, gs.rank);
    const int t = w.tangential_axis();
    const ValueType vt = ValueType::gauge(gs.rank);
    auto constant = [&](double v) {
        return constant_one_form(g, vt, t, scalar_matrix(gs.rank, cplx(0.0, -v)));
    };
    if (gs.preset == "constant-jump") {
        w.a_minus = constant(gs.background);
        w.gauge_jump = constant(gs.jump);
        w.winding = gs.flux;
    } else if (gs.preset == "flux") {
        w.winding = gs.flux;
    } else if (gs.preset == "pure-gauge") {
        w.gauge_jump = constant(kTwoPi * gs.winding / g.length(t));
    } else if (gs.preset == "random") {
        std::mt19937_64 rng(gs.seed);
        w.a_minus = random_lie_form(g, 1, vt, rng, gs.max_mode, gs.amplitude);
        w.gauge_jump = random_lie_form(g, 1, vt, rng, gs.max_mode, gs.amplitude);
        w.winding = gs.flux;
    } else if (gs.preset != "free") {
        throw ConfigError("<config>", 0, "gauge.preset", "unknown preset '" + gs.preset + "'");
    }
    if (c.frame.preset == "random") {
        std::mt19937_64 rng(c.frame.seed);
        const ValueType ft = ValueType::frame(g.dim());
        w.gamma_minus = random_lie_form(g, 1, ft, rng, c.frame.max_mode, c.frame.amplitude);
        if (c.frame.jump) {
            w.gamma_jump = random_lie_form(g, 1, ft, rng, c.frame.max_mode, c.frame.amplitude);
        }
    }
    w.validate();
    return w;
}

SuiteResult run_suite(const ExperimentConfig& c, const std::string& suite) {
    SuiteResult r;
    r.name = suite;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (suite == "forms") forms_suite(c, r);
        else if (suite == "transgression") transgression_suite(c, r);
        else if (suite == "rsa") rsa_suite(c, r);
        else if (suite == "index") index_suite(c, r);
        else if (suite == "cylinder") cylinder_suite(c, r);
        else throw std::invalid_argument("unknown suite '" + suite + "'");
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = r.error.empty();
    for (const auto& ch : r.checks) {
        if (!ch.passed) r.passed = false;
    }
    return r;
}

RunResult run_experiment(const ExperimentConfig& c) {
    // one BLAS thread per call keeps reductions in a fixed order
    openblas_set_num_threads(1);
    RunResult out;
    out.config = c;
    const auto suites = c.selected_suites();
    const std::size_t width = static_cast<std::size_t>(std::max(1, c.parallelism));
    for (std::size_t begin = 0; begin < suites.size(); begin += width) {
        std::vector<std::future<SuiteResult>> batch;
        for (std::size_t i = begin; i < std::min(suites.size(), begin + width); ++i) {
            batch.push_back(std::async(std::launch::async, run_suite, std::cref(c), suites[i]));
        }
        for (auto& f : batch) out.suites.push_back(f.get());
    }
    out.passed = std::all_of(out.suites.begin(), out.suites.end(),
                             [](const SuiteResult& s) { return s.passed; });
    return out;
}

std::vector<std::pair<std::string, std::string>> preset_catalogue() {
    return {
        {"free", "zero connection; index 0"},
        {"constant-jump", "A- = -i background dt, jump -i jump dt, clutching flux `flux`"},
        {"flux", "uniform field strength with `flux` quanta, no jump"},
        {"pure-gauge", "jump = gauge transformation of winding `winding`; index 0"},
        {"random", "band-limited A- and jump from `seed` (u(1) or su(r)), clutching `flux`"},
        {"frame: zero", "flat frame connection"},
        {"frame: random", "band-limited so(n) Gamma- and jump from `frame.seed`"},
    };
}

}  // namespace wallindex
