#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pairgen/bogoliubov.hpp"

namespace pairgen {

/// f over a p_par grid (p_perp = 0) at one time.
struct SpectrumRecord {
    std::vector<double> p_grid;
    std::vector<double> f_values;  // NaN where the point failed
    double t = 0.0;
    BasisChoice basis;
    PulseParams pulse{0.0, 1.0};
    std::size_t missing = 0;

    /// Throws ValidationError unless the arrays match, have >= 2 points and the
    /// grid is strictly increasing.
    void validate() const;
};

/// lo, lo + step, ... up to hi (inclusive within step/2).
std::vector<double> uniform_grid(double lo, double hi, double step);

/// Spectrum at one time, parallel over the grid. Per-point numerical
/// failures are recorded as NaN and counted in `missing`.
SpectrumRecord lms_sweep(const PulseParams& pulse, double t, const BasisChoice& basis,
                         std::span<const double> p_grid, Solver solver = Solver::Exact);

/// Indices i whose value strictly exceeds the `half_window` neighbours on each
/// side. Points closer than half_window to either end are never maxima.
std::vector<std::size_t> local_maxima(std::span<const double> values, std::size_t half_window = 5);

struct TransientBounds {
    double t_in = 0.0;
    double t_out = 0.0;
    double f_const = 0.0;
};

struct TransientOptions {
    double tail_fraction = 0.2;  // f_const = mean of this trailing fraction
    double band = 0.1;           // plateau band, relative to f_const
    double window = 5.0;         // centred moving-average width (time units)
};

/// t_in: first time after the maximum of f at which f reaches f_const.
/// t_out: start of the final stretch on which the centred moving average
/// stays inside f_const (1 +- band). Throws DetectionError when the tail is
/// not flat (stdev > band * mean) or the series is too short.
TransientBounds detect_transient_bounds(std::span<const DistributionSample> series,
                                        const TransientOptions& options = {});

struct StageTimes {
    std::optional<double> t_cp;
    std::optional<double> t_dom;
    std::optional<double> t_dis;
};

struct StageOptions {
    double central_halfwidth = 0.3;  // |p| window of the central peak
    std::size_t half_window = 5;     // local maximum neighbourhood
    double side_inner = 0.1;         // contrast window: inner <= |p| <= outer
    double side_outer = 1.0;
    double contrast_threshold = 0.05;
    bool require_persistence = true;  // stage onset = start of the final unbroken run
};

/// Oscillation contrast (max - min)/(max + min) of f/f_inf over the side
/// window. Dividing by the asymptotic spectrum removes the smooth envelope so
/// only the interference ripple is measured.
double side_contrast(const SpectrumRecord& record, const StageOptions& options = {});

/// t_cp: a local maximum within |p| < central_halfwidth; t_dom: that maximum
/// exceeds every other local maximum; t_dis: first record after t_dom whose
/// side contrast is below the threshold. With require_persistence the first two
/// must hold on every later record, which ignores fringes sweeping past p = 0.
/// Records must be ordered in time. Stages that are never reached stay empty.
StageTimes detect_peak_stages(std::span<const SpectrumRecord> records, const StageOptions& options = {});

/// Divides by the maximum. Throws DetectionError for an all-zero record.
SpectrumRecord normalized_spectrum(const SpectrumRecord& record);

/// sqrt(dp * sum (a - b)^2) on a shared uniform grid.
double l2_distance(const SpectrumRecord& a, const SpectrumRecord& b);
/// max |a - b| / max(|a|, |b|, floor) over the grid.
double max_relative_difference(const SpectrumRecord& a, const SpectrumRecord& b, double floor = 1e-12);

struct OverlapEntry {
    double fraction = 0.0;
    double t_choice1 = 0.0;
    double t_choice2 = 0.0;
    double l2_normalized = 0.0;
    double max_relative = 0.0;
    double contrast_choice1 = 0.0;
    double contrast_choice2 = 0.0;
    SpectrumRecord choice1;
    SpectrumRecord choice2;
};

struct OverlapReport {
    double t_out_choice1 = 0.0;
    double t_out_choice2 = 0.0;
    std::vector<OverlapEntry> entries;
};

/// Transient bounds of both bases at p_ref (series on [-3 tau, 8 tau],
/// step tau/100), then spectra at k * t_out for each fraction k.
OverlapReport scaled_time_overlap(const PulseParams& pulse, std::span<const double> fractions,
                                  std::span<const double> p_grid, const Momentum& p_ref = {},
                                  const StageOptions& stage_options = {});

/// f(t) series on [-3 tau, 8 tau] at step tau/100 used for transient detection.
std::vector<DistributionSample> transient_series(const PulseParams& pulse, const Momentum& p,
                                                 const BasisChoice& basis);
TransientOptions transient_options_for(const PulseParams& pulse);

}  // namespace pairgen
