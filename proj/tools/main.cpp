#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wallindex/config.hpp"
#include "wallindex/experiment.hpp"
#include "wallindex/report.hpp"

namespace {

constexpr int kExitSuiteFailure = 1;
constexpr int kExitConfigError = 2;

int run_command(const std::string& path, const std::vector<std::string>& suites,
                const std::string& out_dir, int parallelism, double tolerance_scale) {
    using namespace wallindex;
    ExperimentConfig cfg;
    try {
        cfg = load_config(path);
        if (!suites.empty()) cfg.suites = suites;
        if (parallelism > 0) cfg.parallelism = parallelism;
        if (tolerance_scale > 0.0) cfg.tolerance_scale = tolerance_scale;
        if (!out_dir.empty()) {
            cfg.output_dir = out_dir;
        } else if (const char* env = std::getenv("WALLINDEX_OUT"); env && *env) {
            cfg.output_dir = env;
        }
        validate_config(cfg, path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    const RunResult run = run_experiment(cfg);
    std::filesystem::path report;
    try {
        report = write_outputs(run, cfg.output_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSuiteFailure;
    }
    std::cout << render_summary(report_json(run)) << '\n';
    for (const auto& s : run.suites) {
        std::cout << "time " << std::left << std::setw(14) << s.name << std::right << std::fixed
                  << std::setprecision(2) << s.seconds << " s\n";
    }
    std::cout << "wrote " << report.string() << '\n';
    return run.passed ? 0 : kExitSuiteFailure;
}

int report_command(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << '\n';
        return kExitConfigError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        const std::string summary = wallindex::render_summary(text.str());
        std::cout << summary;
        return summary.find("FAILED") == std::string::npos ? 0 : kExitSuiteFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << ": " << e.what() << '\n';
        return kExitConfigError;
    }
}

int presets_command() {
    for (const auto& [name, text] : wallindex::preset_catalogue()) {
        std::cout << std::left << std::setw(16) << name << text << '\n';
    }
    std::cout << "\nsuites:";
    for (const auto& s : wallindex::known_suites()) std::cout << ' ' << s;
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Domain-wall index experiments on flat tori"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> suites;
    std::string out_dir;
    int parallelism = 0;
    double tolerance_scale = 0.0;
    auto* run = app.add_subcommand("run", "Run the suites of a configuration file");
    run->add_option("config", config_path, "Configuration file")->required();
    run->add_option("--suite", suites, "Suite to run (repeatable); overrides the config")
        ->check(CLI::IsMember(wallindex::known_suites()));
    run->add_option("--out-dir", out_dir, "Output directory; overrides WALLINDEX_OUT and the config");
    run->add_option("--parallelism", parallelism, "Suites run concurrently")
        ->check(CLI::PositiveNumber);
    run->add_option("--tolerance-scale", tolerance_scale, "Multiplier for every tolerance")
        ->check(CLI::PositiveNumber);

    std::string report_path;
    auto* report = app.add_subcommand("report", "Summarize an existing report.json");
    report->add_option("report", report_path, "Path to report.json")->required();

    app.add_subcommand("presets", "List field presets and suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (*run) return run_command(config_path, suites, out_dir, parallelism, tolerance_scale);
        if (*report) return report_command(report_path);
        return presets_command();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSuiteFailure;
    }
}
