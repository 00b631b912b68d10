#include "pairgen/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "pairgen/errors.hpp"
#include "pairgen/parallel.hpp"

namespace pairgen {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_same_grid(const SpectrumRecord& a, const SpectrumRecord& b) {
    a.validate();
    b.validate();
    if (a.p_grid != b.p_grid) throw ValidationError("spectra: records use different momentum grids");
}

}  // namespace

void SpectrumRecord::validate() const {
    if (p_grid.size() != f_values.size()) throw ValidationError("SpectrumRecord: grid and values differ in length");
    if (p_grid.size() < 2) throw ValidationError("SpectrumRecord: needs at least two grid points");
    for (std::size_t i = 1; i < p_grid.size(); ++i) {
        if (!(p_grid[i] > p_grid[i - 1])) throw ValidationError("SpectrumRecord: grid must be strictly increasing");
    }
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw ValidationError("uniform_grid: need step > 0 and hi >= lo");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
    return g;
}

SpectrumRecord lms_sweep(const PulseParams& pulse, double t, const BasisChoice& basis,
                         std::span<const double> p_grid, Solver solver) {
    SpectrumRecord rec;
    rec.p_grid.assign(p_grid.begin(), p_grid.end());
    rec.f_values.assign(p_grid.size(), kNaN);
    rec.t = t;
    rec.basis = basis;
    rec.pulse = pulse;
    rec.validate();
    std::vector<char> failed(p_grid.size(), 0);
    parallel_for(p_grid.size(), [&](std::size_t i) {
        try {
            rec.f_values[i] = distribution(pulse, Momentum{p_grid[i], 0.0}, t, basis, solver).f;
        } catch (const Error&) {
            failed[i] = 1;
        }
    });
    rec.missing = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
    return rec;
}

std::vector<std::size_t> local_maxima(std::span<const double> values, std::size_t half_window) {
    std::vector<std::size_t> out;
    const std::size_t n = values.size();
    if (n < 2 * half_window + 1) return out;
    for (std::size_t i = half_window; i + half_window < n; ++i) {
        const double v = values[i];
        if (std::isnan(v)) continue;
        bool ok = true;
        for (std::size_t k = 1; k <= half_window && ok; ++k) {
            ok = v > values[i - k] && v > values[i + k];
        }
        if (ok) out.push_back(i);
    }
    return out;
}

TransientBounds detect_transient_bounds(std::span<const DistributionSample> series,
                                        const TransientOptions& options) {
    const std::size_t n = series.size();
    if (n < 10) throw DetectionError("detect_transient_bounds: series too short");
    const auto tail_n = std::max<std::size_t>(2, static_cast<std::size_t>(options.tail_fraction * n));
    double mean = 0.0;
    for (std::size_t i = n - tail_n; i < n; ++i) mean += series[i].f;
    mean /= static_cast<double>(tail_n);
    double var = 0.0;
    for (std::size_t i = n - tail_n; i < n; ++i) var += (series[i].f - mean) * (series[i].f - mean);
    const double stdev = std::sqrt(var / static_cast<double>(tail_n));
    if (!(mean > 0.0) || stdev > options.band * mean) {
        throw DetectionError("detect_transient_bounds: no residual plateau (tail stdev " + std::to_string(stdev) +
                             ", mean " + std::to_string(mean) + ")");
    }

    TransientBounds out;
    out.f_const = mean;

    // Centred moving average, truncated at the ends.
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + series[i].f;
    const double half = 0.5 * options.window;
    std::vector<double> avg(n);
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (series[lo].t < series[i].t - half) ++lo;
        while (hi < n && series[hi].t <= series[i].t + half) ++hi;
        avg[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
    }
    std::size_t start = n;
    while (start > 0 && std::abs(avg[start - 1] - mean) <= options.band * mean) --start;
    if (start == n) throw DetectionError("detect_transient_bounds: moving average never settles");
    out.t_out = series[start].t;

    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (series[i].f > series[peak].f) peak = i;
    }
    out.t_in = out.t_out;
    for (std::size_t i = peak + 1; i < n; ++i) {
        if ((series[i - 1].f - mean) * (series[i].f - mean) <= 0.0) {
            out.t_in = series[i].t;
            break;
        }
    }
    // Monotone approach: the crossing may come after the plateau entry.
    out.t_in = std::min(out.t_in, out.t_out);
    return out;
}

double side_contrast(const SpectrumRecord& record, const StageOptions& options) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < record.p_grid.size(); ++i) {
        const double ap = std::abs(record.p_grid[i]);
        if (ap < options.side_inner || ap > options.side_outer || std::isnan(record.f_values[i])) continue;
        const double ref = asymptotic_distribution(record.pulse, Momentum{record.p_grid[i], 0.0});
        if (!(ref > 0.0)) continue;
        const double r = record.f_values[i] / ref;
        hi = std::max(hi, r);
        lo = std::min(lo, r);
    }
    if (!(hi > lo) || !(hi + lo > 0.0)) return 0.0;
    return (hi - lo) / (hi + lo);
}

StageTimes detect_peak_stages(std::span<const SpectrumRecord> records, const StageOptions& options) {
    StageTimes st;
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (!(records[r].t > records[r - 1].t)) throw ValidationError("detect_peak_stages: records must be time-ordered");
    }
    const std::size_t n = records.size();
    std::vector<char> has_central(n, 0), dominant(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        const SpectrumRecord& rec = records[r];
        const auto maxima = local_maxima(rec.f_values, options.half_window);
        std::optional<std::size_t> central;
        double other = -std::numeric_limits<double>::infinity();
        for (std::size_t i : maxima) {
            if (std::abs(rec.p_grid[i]) < options.central_halfwidth) {
                if (!central || rec.f_values[i] > rec.f_values[*central]) central = i;
            }
        }
        for (std::size_t i : maxima) {
            if (!central || i != *central) other = std::max(other, rec.f_values[i]);
        }
        has_central[r] = central.has_value();
        dominant[r] = central && rec.f_values[*central] > other;
    }
    // Returns the first index of the condition, or of its final unbroken run
    // when persistence is required.
    auto onset = [&](const std::vector<char>& flag, std::size_t from) -> std::optional<std::size_t> {
        if (!options.require_persistence) {
            for (std::size_t r = from; r < n; ++r) {
                if (flag[r]) return r;
            }
            return std::nullopt;
        }
        if (n == 0 || !flag[n - 1]) return std::nullopt;
        std::size_t r = n - 1;
        while (r > from && flag[r - 1]) --r;
        return r;
    };
    const auto cp = onset(has_central, 0);
    if (!cp) return st;
    st.t_cp = records[*cp].t;
    const auto dom = onset(dominant, *cp);
    if (!dom) return st;
    st.t_dom = records[*dom].t;
    for (std::size_t r = *dom + 1; r < n; ++r) {
        if (side_contrast(records[r], options) < options.contrast_threshold) {
            st.t_dis = records[r].t;
            break;
        }
    }
    return st;
}

SpectrumRecord normalized_spectrum(const SpectrumRecord& record) {
    record.validate();
    double mx = 0.0;
    for (double v : record.f_values) {
        if (!std::isnan(v)) mx = std::max(mx, v);
    }
    if (!(mx > 0.0)) throw DetectionError("normalized_spectrum: record has no positive value");
    SpectrumRecord out = record;
    for (double& v : out.f_values) v /= mx;
    return out;
}

double l2_distance(const SpectrumRecord& a, const SpectrumRecord& b) {
    require_same_grid(a, b);
    const double dp = (a.p_grid.back() - a.p_grid.front()) / static_cast<double>(a.p_grid.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.p_grid.size(); ++i) {
        const double d = a.f_values[i] - b.f_values[i];
        if (!std::isnan(d)) acc += d * d;
    }
    return std::sqrt(dp * acc);
}

double max_relative_difference(const SpectrumRecord& a, const SpectrumRecord& b, double floor) {
    require_same_grid(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.p_grid.size(); ++i) {
        const double x = a.f_values[i], y = b.f_values[i];
        if (std::isnan(x) || std::isnan(y)) continue;
        worst = std::max(worst, std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor}));
    }
    return worst;
}

std::vector<DistributionSample> transient_series(const PulseParams& pulse, const Momentum& p,
                                                 const BasisChoice& basis) {
    const double tau = pulse.tau();
    const std::vector<double> grid = uniform_grid(-3.0 * tau, 8.0 * tau, tau / 100.0);
    return distribution_series(pulse, p, grid, basis, Solver::Ode);
}

TransientOptions transient_options_for(const PulseParams& pulse) {
    TransientOptions o;
    o.window = 0.5 * pulse.tau();
    return o;
}

OverlapReport scaled_time_overlap(const PulseParams& pulse, std::span<const double> fractions,
                                  std::span<const double> p_grid, const Momentum& p_ref,
                                  const StageOptions& stage_options) {
    OverlapReport rep;
    const TransientOptions topt = transient_options_for(pulse);
    rep.t_out_choice1 =
        detect_transient_bounds(transient_series(pulse, p_ref, BasisChoice::choice1()), topt).t_out;
    rep.t_out_choice2 =
        detect_transient_bounds(transient_series(pulse, p_ref, BasisChoice::choice2()), topt).t_out;
    for (double k : fractions) {
        OverlapEntry e;
        e.fraction = k;
        e.t_choice1 = k * rep.t_out_choice1;
        e.t_choice2 = k * rep.t_out_choice2;
        e.choice1 = lms_sweep(pulse, e.t_choice1, BasisChoice::choice1(), p_grid);
        e.choice2 = lms_sweep(pulse, e.t_choice2, BasisChoice::choice2(), p_grid);
        const SpectrumRecord n1 = normalized_spectrum(e.choice1);
        const SpectrumRecord n2 = normalized_spectrum(e.choice2);
        e.l2_normalized = l2_distance(n1, n2);
        e.max_relative = max_relative_difference(e.choice1, e.choice2);
        e.contrast_choice1 = side_contrast(e.choice1, stage_options);
        e.contrast_choice2 = side_contrast(e.choice2, stage_options);
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

}  // namespace pairgen
