#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pairgen/bogoliubov.hpp"

namespace pairgen {

enum class Scenario {
    TimeEvolutionAtFixedP,
    LmsAtTimes,
    StageDetection,
    ScaledOverlap,
    MultiphotonSpectra,
    LateTimeFit,
};

std::string scenario_name(Scenario s);
/// Throws ValidationError for unknown names.
Scenario parse_scenario(const std::string& name);

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
    bool operator==(const GridSpec&) const = default;
};

/// Everything one `pairgen run` needs. Field names mirror the TOML keys.
struct RunConfig {
    Scenario scenario = Scenario::LmsAtTimes;
    double e0 = 0.2;
    double tau = 10.0;
    std::vector<std::string> bases{"choice1", "choice2"};
    Solver solver = Solver::Exact;
    GridSpec momentum{-4.0, 4.0, 0.01};  // p_par grid, p_perp = 0
    GridSpec time{0.0, 100.0, 0.25};
    std::vector<double> times;           // LmsAtTimes, MultiphotonSpectra
    double p_par = 0.0;                  // reference momentum
    double p_perp = 0.0;
    std::vector<double> fields{0.1, 0.2, 0.3};        // StageDetection
    std::vector<double> fractions{0.75, 1.25, 1.75};  // ScaledOverlap
    std::filesystem::path output_dir = "pairgen-out";
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: PAIRGEN_THREADS or hardware concurrency

    bool operator==(const RunConfig&) const = default;

    PulseParams pulse() const { return PulseParams(e0, tau); }
    Momentum reference_momentum() const { return {p_par, p_perp}; }
    std::vector<BasisChoice> basis_choices() const;
    std::vector<double> momentum_grid() const;
    std::vector<double> time_grid() const;

    /// Checks value ranges and the fields each scenario needs. Throws
    /// ValidationError with the offending key.
    void validate() const;
};

/// Parses TOML text, applies `key=value` overrides (dotted keys, TOML value
/// syntax; bare words are taken as strings) and validates.
RunConfig parse_config(std::string_view toml_text, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Complete TOML rendering of the config. parse_config(to_toml(c)) == c.
std::string to_toml(const RunConfig& config);

}  // namespace pairgen
