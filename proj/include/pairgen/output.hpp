#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pairgen/spectra.hpp"

namespace pairgen::output {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest round-trip decimal form; "nan" / "inf" / "-inf" for non-finite.
std::string format_number(double v);

/// Columns p_par,f,basis,t after a block of "# key=value" lines.
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumRecord& record, const Metadata& meta);
/// Columns t,f,basis.
void write_series_csv(const std::filesystem::path& path, const std::vector<DistributionSample>& series,
                      const Metadata& meta);

struct Line {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = true;
};

/// Self-contained SVG line plot. Points with y <= 0 (log axis) or non-finite
/// values break the polyline.
void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Line>& lines);

/// Writes text, creating parent directories. Throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pairgen::output
