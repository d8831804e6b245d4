#include "wallindex/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wallindex {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered complex_json(cplx z) { return ordered{{"re", z.real()}, {"im", z.imag()}}; }

template <class T>
ordered optional_json(const std::optional<T>& v) {
    return v ? ordered(*v) : ordered(nullptr);
}

ordered config_json(const ExperimentConfig& c) {
    const Tolerances t = c.scaled_tolerances();
    return ordered{
        {"name", c.name},
        {"seed", c.seed},
        {"suites", c.selected_suites()},
        {"tolerance_scale", c.tolerance_scale},
        {"manifold",
         {{"dimension", c.manifold.dimension},
          {"points", c.manifold.points},
          {"lengths", c.manifold.lengths},
          {"wall_axis", c.manifold.wall_axis},
          {"wall_index", c.manifold.wall_index},
          {"orientation", c.manifold.orientation},
          {"metric", "flat-product"}}},
        {"gauge",
         {{"preset", c.gauge.preset},
          {"rank", c.gauge.rank},
          {"jump", c.gauge.jump},
          {"background", c.gauge.background},
          {"flux", c.gauge.flux},
          {"winding", c.gauge.winding},
          {"seed", c.gauge.seed},
          {"amplitude", c.gauge.amplitude},
          {"max_mode", c.gauge.max_mode}}},
        {"frame",
         {{"preset", c.frame.preset},
          {"seed", c.frame.seed},
          {"amplitude", c.frame.amplitude},
          {"max_mode", c.frame.max_mode},
          {"jump", c.frame.jump}}},
        {"index",
         {{"discretization", to_string(c.index.discretization)},
          {"method", to_string(c.index.method)},
          {"points", c.index.points},
          {"threshold", c.index.threshold}}},
        {"cylinder",
         {{"epsilons", c.cylinder.epsilons}, {"transverse_points", c.cylinder.transverse_points}}},
        {"tolerances",
         {{"structural", t.structural},
          {"identity", t.identity},
          {"rsa", t.rsa},
          {"cylinder", t.cylinder},
          {"spectral", t.spectral},
          {"integrality", t.integrality},
          {"pairing", t.pairing},
          {"imaginary", t.imaginary}}},
    };
}

ordered conventions_json() {
    return ordered{
        {"connection", "anti-Hermitian A, F = dA + A^A; Hermitian potential a = iA"},
        {"chern_character", "tr exp(iF/2pi)"},
        {"a_hat", "1 - p1/24, p1 = -tr(R^2)/(8 pi^2)"},
        {"orientation", "dx^0 ^ ... ^ dx^(n-1) times manifold.orientation; wall induced by "
                        "interior product with the wall-axis normal"},
        {"wall_chart", "torus cut at the wall plane; plus side at s0+, clutching "
                       "exp(-2 pi i k x^t / L_t) at s0-"},
        {"transgression", "sum_k k int_0^1 V_k(A1 - A0, F_t, ...) dt, Gauss-Legendre in t"},
        {"eta", "Gaussian-smoothed signature, two Richardson steps in the width; "
                "zero modes excluded and counted"},
        {"wall_eta", "orientation * (eta(plus) - eta(minus))"},
        {"index", "bulk Pontryagin integral minus half the wall integrand"},
        {"zero_modes", "near-zero window, chirality-resolved, classified by low-band weight"},
        {"dirac", "[[0, L^dagger], [L, 0]], L = D_s + i D_t, SLAC derivative on (-N/2, N/2]"},
    };
}

ordered eta_json(const EtaResult& e) {
    return ordered{{"value", e.value},
                   {"kernel_dimension", e.kernel_dimension},
                   {"widths", e.widths},
                   {"smoothed", e.smoothed},
                   {"first_level", e.first_level},
                   {"extrapolation_error", e.extrapolation_error}};
}

ordered rsa_json(const RSAReport& r) {
    ordered out{{"rsa_a_hat_plus", complex_json(r.rsa_plus)},
                {"rsa_a_hat_minus", complex_json(r.rsa_minus)},
                {"rsa_reduced", r.reduced ? complex_json(*r.reduced) : ordered(nullptr)},
                {"correction", complex_json(r.correction)},
                {"eta_spectral", optional_json(r.eta_spectral)},
                {"eta_seeley", optional_json(r.eta_seeley)},
                {"spectral_flow", r.spectral_flow},
                {"channels", r.channels},
                {"residuals", r.residuals},
                {"max_imaginary", r.max_imaginary}};
    out["eta_plus"] = r.eta_plus ? eta_json(*r.eta_plus) : ordered(nullptr);
    out["eta_minus"] = r.eta_minus ? eta_json(*r.eta_minus) : ordered(nullptr);
    return out;
}

ordered index_json(const IndexRun& run) {
    const IndexReport& r = run.report;
    ordered out{{"points", run.points},
                {"bulk", complex_json(r.bulk)},
                {"rsa_a_hat_plus", complex_json(r.rsa.rsa_plus)},
                {"predicted", r.predicted},
                {"integrality_gap", r.integrality_gap},
                {"spectral_index", optional_json(r.spectral_index)},
                {"residual", optional_json(r.residual)},
                {"spectral_status", r.spectral_status}};
    if (r.spectrum) {
        const DiracSpectrum& s = *r.spectrum;
        out["spectrum"] = ordered{{"dimension", s.eigenvalues.size()},
                                  {"threshold", s.threshold},
                                  {"n_plus", s.n_plus},
                                  {"n_minus", s.n_minus},
                                  {"cutoff_modes", s.cutoff_modes},
                                  {"ambiguous_modes", s.ambiguous_modes},
                                  {"pairing_residual", s.pairing_residual}};
    } else {
        out["spectrum"] = nullptr;
    }
    return out;
}

ordered suite_json(const SuiteResult& s) {
    ordered checks = ordered::array();
    for (const auto& c : s.checks) {
        checks.push_back(ordered{{"name", c.name},
                                 {"value", c.value},
                                 {"tolerance", c.tolerance},
                                 {"passed", c.passed}});
    }
    ordered values = ordered::array();
    for (const auto& v : s.values) values.push_back(ordered{{"name", v.name}, {"value", v.value}});
    ordered details = ordered::object();
    if (s.rsa) details["rsa"] = rsa_json(*s.rsa);
    if (!s.index.empty()) {
        ordered runs = ordered::array();
        for (const auto& r : s.index) runs.push_back(index_json(r));
        details["index"] = runs;
    }
    if (!s.sweep.empty()) {
        ordered pts = ordered::array();
        for (const auto& p : s.sweep) {
            pts.push_back(ordered{{"epsilon", p.epsilon}, {"value", complex_json(p.value)}});
        }
        details["sweep"] = pts;
        details["limit"] = complex_json(*s.sweep_limit);
    }
    return ordered{{"name", s.name},
                   {"passed", s.passed},
                   {"error", s.error.empty() ? ordered(nullptr) : ordered(s.error)},
                   {"checks", checks},
                   {"values", values},
                   {"details", details}};
}

}  // namespace

std::string report_json(const RunResult& run) {
    ordered doc{{"schema", kReportSchema},
                {"schema_version", kReportSchemaVersion},
                {"name", run.config.name},
                {"passed", run.passed},
                {"config", config_json(run.config)},
                {"conventions", conventions_json()}};
    ordered suites = ordered::array();
    for (const auto& s : run.suites) suites.push_back(suite_json(s));
    doc["suites"] = suites;
    return doc.dump(2) + "\n";
}

std::filesystem::path write_outputs(const RunResult& run, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto open = [&](const char* name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("report.json");
        f << report_json(run);
    }
    {
        auto f = open("spectra.csv");
        f << "points,eigenvalue,chirality,low_band_weight\n";
        for (const auto& s : run.suites) {
            for (const auto& r : s.index) {
                if (!r.report.spectrum) continue;
                std::ostringstream rows;
                write_spectrum_csv(*r.report.spectrum, rows);
                std::istringstream in(rows.str());
                std::string line;
                std::getline(in, line);  // header
                while (std::getline(in, line)) f << r.points << ',' << line << '\n';
            }
        }
    }
    {
        auto f = open("sweep.csv");
        f << "epsilon,value_real,value_imag\n" << std::setprecision(17);
        for (const auto& s : run.suites) {
            for (const auto& p : s.sweep) {
                f << p.epsilon << ',' << p.value.real() << ',' << p.value.imag() << '\n';
            }
        }
    }
    return dir / "report.json";
}

std::string render_summary(std::string_view report_text) {
    json doc;
    try {
        doc = json::parse(report_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != kReportSchema) {
        throw std::invalid_argument("not a wallindex report");
    }
    std::ostringstream out;
    out << "report: " << doc.value("name", "") << "  (schema v" << doc.value("schema_version", 0)
        << ")\n";
    for (const auto& s : doc.at("suites")) {
        out << '\n'
            << "[" << (s.at("passed").get<bool>() ? "PASS" : "FAIL") << "] suite "
            << s.at("name").get<std::string>() << '\n';
        if (!s.at("error").is_null()) out << "  error: " << s.at("error").get<std::string>() << '\n';
        const auto number = [&](const json& v) {
            out << std::right << std::setw(13) << std::scientific << std::setprecision(4);
            if (v.is_null()) out << "nan";
            else out << v.get<double>();
            out << std::defaultfloat;
        };
        for (const auto& c : s.at("checks")) {
            out << "  " << (c.at("passed").get<bool>() ? "ok  " : "FAIL") << ' ' << std::left
                << std::setw(36) << c.at("name").get<std::string>();
            number(c.at("value"));
            out << "  <= ";
            number(c.at("tolerance"));
            out << '\n';
        }
        for (const auto& v : s.at("values")) {
            out << "       " << std::left << std::setw(36) << v.at("name").get<std::string>();
            number(v.at("value"));
            out << '\n';
        }
    }
    if (doc.at("suites").empty()) return out.str();
    out << '\n' << (doc.at("passed").get<bool>() ? "all suites passed" : "FAILED") << '\n';
    return out.str();
}

}  // namespace wallindex
