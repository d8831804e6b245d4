#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wallindex/dirac.hpp"

namespace wallindex {

/// Invalid or unreadable configuration. `line` is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& origin, int line, const std::string& field, const std::string& what);
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

struct ManifoldSpec {
    int dimension = 2;
    std::vector<int> points{24, 24};
    std::vector<double> lengths{kTwoPi, kTwoPi};
    int wall_axis = 0;
    int wall_index = 0;
    int orientation = 1;
};

/// Gauge field presets:
///   free           A = 0
///   constant-jump  A- = -i background dt, jump -i jump dt, clutching `flux`
///   flux           no jump, clutching `flux` (uniform field strength)
///   pure-gauge     jump -i (2 pi winding / L_t) dt, a gauge transformation
///                  with winding number `winding`
///   random         band-limited A- and jump from `seed`, clutching `flux`
struct GaugeSpec {
    std::string preset = "free";
    int rank = 1;
    double jump = 0.0;
    double background = 0.0;
    int flux = 0;
    int winding = 0;
    std::uint64_t seed = 1;
    double amplitude = 0.3;
    int max_mode = 1;
};

/// Frame connection presets: zero | random (band-limited Gamma- and jump).
struct FrameSpec {
    std::string preset = "zero";
    std::uint64_t seed = 2;
    double amplitude = 0.3;
    int max_mode = 1;
    bool jump = true;  ///< random preset: also draw a jump
};

struct IndexSpec {
    Discretization discretization = Discretization::spectral;
    EigenMethod method = EigenMethod::singular_values;
    std::vector<int> points{24, 32};  ///< refinement ladder for the spectral index
    double threshold = 1e-2;
};

struct CylinderSpec {
    std::vector<double> epsilons{0.5, 0.25, 0.1};
    int transverse_points = 32;
};

struct Tolerances {
    double structural = 1e-10;  ///< d o d, wedge symmetry
    double identity = 1e-8;     ///< transgression, Stokes, cylinder at B2 = 0
    double rsa = 1e-6;          ///< agreement of the two wall integrands
    double cylinder = 1e-6;     ///< collar vs limit, two-collar vs wall integral
    double spectral = 1e-3;     ///< spectral eta vs characteristic forms
    double integrality = 0.05;  ///< predicted index vs nearest integer
    double pairing = 1e-9;      ///< lambda <-> -lambda symmetry
    double imaginary = 1e-9;    ///< imaginary parts of real quantities
};

inline const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> s{"forms", "transgression", "rsa", "index", "cylinder"};
    return s;
}

struct ExperimentConfig {
    std::string name = "experiment";
    std::uint64_t seed = 1;
    ManifoldSpec manifold;
    GaugeSpec gauge;
    FrameSpec frame;
    IndexSpec index;
    CylinderSpec cylinder;
    Tolerances tolerances;
    double tolerance_scale = 1.0;
    std::vector<std::string> suites{"all"};
    std::string output_dir = "wallindex-out";
    int parallelism = 1;

    /// Suites with "all" expanded, in canonical order.
    std::vector<std::string> selected_suites() const;
    /// Tolerances multiplied by tolerance_scale.
    Tolerances scaled_tolerances() const;
};

/// Parses the TOML-style configuration format: `key = value` lines grouped in
/// `[table]` sections, with strings, integers, floats, booleans and flat
/// arrays as values and `#` comments. Unknown keys are errors.
ExperimentConfig parse_config(std::string_view text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Checks cross-field constraints (grid shape, preset names, suites); throws
/// ConfigError.
void validate_config(const ExperimentConfig& c, const std::string& origin = "<config>");

}  // namespace wallindex
