#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wallindex/experiment.hpp"

namespace wallindex {

inline constexpr const char* kReportSchema = "wallindex-report";
inline constexpr int kReportSchemaVersion = 1;

/// report.json contents: configuration echo, conventions, and per-suite checks
/// and details. Contains no timings, so equal configurations give equal bytes.
std::string report_json(const RunResult& run);

/// Writes report.json, spectra.csv and sweep.csv into `dir` (created if
/// missing) and returns the report path.
std::filesystem::path write_outputs(const RunResult& run, const std::filesystem::path& dir);

/// Fixed-width summary of a report.json document: one row per check, failing
/// rows marked, suite errors listed. Throws std::invalid_argument if the text
/// is not a wallindex report.
std::string render_summary(std::string_view report_text);

}  // namespace wallindex
