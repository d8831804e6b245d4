#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wallindex/config.hpp"
#include "wallindex/cylinder.hpp"
#include "wallindex/dirac.hpp"
#include "wallindex/rsa.hpp"

namespace wallindex {

/// A residual compared against its tolerance; passes when value <= tolerance.
struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// A reported quantity that is not itself a pass/fail criterion.
struct Measurement {
    std::string name;
    double value = 0.0;
};

struct IndexRun {
    int points = 0;
    IndexReport report;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string error;  ///< set when the suite aborted
    std::vector<Check> checks;
    std::vector<Measurement> values;
    double seconds = 0.0;

    std::optional<RSAReport> rsa;
    std::vector<IndexRun> index;
    std::vector<SweepPoint> sweep;
    std::optional<cplx> sweep_limit;
};

struct RunResult {
    ExperimentConfig config;
    std::vector<SuiteResult> suites;
    bool passed = true;
};

/// Wall configuration described by the gauge and frame presets.
WallData build_wall(const ExperimentConfig& c);

/// Runs one suite by name; exceptions are captured into `error`.
SuiteResult run_suite(const ExperimentConfig& c, const std::string& suite);

/// Runs the selected suites, up to `parallelism` at a time, and returns them
/// in canonical order. The result depends only on the configuration.
RunResult run_experiment(const ExperimentConfig& c);

/// Field-preset catalogue: name and one-line description.
std::vector<std::pair<std::string, std::string>> preset_catalogue();

}  // namespace wallindex
