#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pairgen/run_config.hpp"

namespace pairgen {

struct RunSummary {
    std::vector<std::filesystem::path> files;  // relative to the output directory
    std::vector<std::string> failures;         // numerical failures; outputs written so far are kept
    double wall_seconds = 0.0;

    int exit_code() const { return failures.empty() ? 0 : 3; }
};

/// Executes the configured scenario, writes its result, plot and
/// manifest.toml files below config.output_dir and returns what happened.
/// Numerical failures of individual items are collected, not thrown.
/// Throws ValidationError for an invalid config and IoError when the output
/// cannot be written.
RunSummary run(const RunConfig& config, std::ostream* log = nullptr);

std::string version_string();

}  // namespace pairgen
