#include "pairgen/runner.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include <boost/version.hpp>
#include <json.hpp>

#include "pairgen/errors.hpp"
#include "pairgen/late_time.hpp"
#include "pairgen/output.hpp"
#include "pairgen/parallel.hpp"
#include "pairgen/spectra.hpp"

#ifndef PAIRGEN_VERSION
#define PAIRGEN_VERSION "0.0.0"
#endif

namespace pairgen {

namespace {

using nlohmann::ordered_json;
using output::format_number;

class Context {
public:
    Context(const RunConfig& c, std::ostream* log) : config(c), log_(log) {}

    const RunConfig& config;
    RunSummary summary;

    std::filesystem::path path(const std::string& name) {
        summary.files.emplace_back(name);
        return config.output_dir / name;
    }

    void note(const std::string& msg) {
        if (log_) *log_ << msg << '\n';
    }

    void fail(const std::string& what, const std::exception& e) { fail(what + ": " + e.what()); }
    void fail(const std::string& msg) {
        summary.failures.push_back(msg);
        note("failure: " + msg);
    }

    // Runs body; numerical errors become recorded failures, I/O errors propagate.
    template <class F>
    void guarded(const std::string& what, F&& body) {
        try {
            body();
        } catch (const IoError&) {
            throw;
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            fail(what, e);
        }
    }

    output::Metadata meta(std::initializer_list<std::pair<std::string, std::string>> extra = {}) const {
        output::Metadata m = {{"scenario", scenario_name(config.scenario)},
                              {"e0", format_number(config.e0)},
                              {"tau", format_number(config.tau)}};
        bool has_perp = false;
        for (const auto& kv : extra) {
            m.push_back(kv);
            has_perp = has_perp || kv.first == "p_perp";
        }
        if (!has_perp) m.emplace_back("p_perp", "0");
        return m;
    }

    void check_missing(const SpectrumRecord& rec) {
        if (rec.missing > 0) {
            fail(std::to_string(rec.missing) + " momentum points failed in " + basis_name(rec.basis) +
                 " spectrum at t=" + format_number(rec.t));
        }
    }

    void write_json(const std::string& name, const ordered_json& j) { output::write_text(path(name), j.dump(2) + "\n"); }

private:
    std::ostream* log_;
};

std::string tag(double v) { return format_number(v); }

ordered_json optional_value(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

output::Line spectrum_line(const SpectrumRecord& rec, const std::string& label, bool normalize) {
    output::Line l{label, rec.p_grid, rec.f_values};
    if (normalize) {
        double mx = 0.0;
        for (double v : rec.f_values) {
            if (std::isfinite(v)) mx = std::max(mx, v);
        }
        if (mx > 0.0) {
            for (double& v : l.y) v /= mx;
        }
    }
    return l;
}

void time_evolution(Context& ctx) {
    const RunConfig& c = ctx.config;
    const PulseParams pulse = c.pulse();
    const Momentum p = c.reference_momentum();
    const std::vector<double> grid = c.time_grid();
    std::vector<output::Line> lines;
    ordered_json transient = ordered_json::array();
    for (const BasisChoice& basis : c.basis_choices()) {
        const std::string name = basis_name(basis);
        ctx.note("series " + name);
        ctx.guarded("series " + name, [&] {
            const auto series = distribution_series(pulse, p, grid, basis, c.solver);
            output::write_series_csv(ctx.path("series_" + name + ".csv"), series,
                                     ctx.meta({{"p_par", format_number(p.p_par)},
                                               {"p_perp", format_number(p.p_perp)},
                                               {"solver", c.solver == Solver::Exact ? "exact" : "ode"}}));
            output::Line l{name, {}, {}};
            for (const DistributionSample& s : series) {
                l.x.push_back(s.t);
                l.y.push_back(s.f);
            }
            lines.push_back(std::move(l));
            ordered_json entry{{"basis", name}};
            try {
                const TransientBounds b = detect_transient_bounds(series, transient_options_for(pulse));
                entry["t_in"] = b.t_in;
                entry["t_out"] = b.t_out;
                entry["f_const"] = b.f_const;
            } catch (const DetectionError& e) {
                entry["error"] = e.what();
            }
            transient.push_back(entry);
        });
    }
    ctx.write_json("transient.json", {{"scenario", scenario_name(c.scenario)},
                                      {"e0", c.e0},
                                      {"tau", c.tau},
                                      {"p_par", p.p_par},
                                      {"p_perp", p.p_perp},
                                      {"bounds", transient}});
    output::write_svg(ctx.path("time_evolution.svg"),
                      {"f(t) at p_par=" + tag(p.p_par) + ", E0=" + tag(c.e0) + ", tau=" + tag(c.tau), "t [1/m]",
                       "f", true},
                      lines);
}

void lms_at_times(Context& ctx, bool normalized_plots, ordered_json* summary) {
    const RunConfig& c = ctx.config;
    const PulseParams pulse = c.pulse();
    const std::vector<double> grid = c.momentum_grid();
    const std::string stem = normalized_plots ? "multiphoton" : "lms";
    for (double t : c.times) {
        std::vector<output::Line> lines;
        std::vector<SpectrumRecord> records;
        for (const BasisChoice& basis : c.basis_choices()) {
            const std::string name = basis_name(basis);
            ctx.note("spectrum " + name + " t=" + tag(t));
            ctx.guarded("spectrum " + name + " t=" + tag(t), [&] {
                SpectrumRecord rec = lms_sweep(pulse, t, basis, grid, c.solver);
                ctx.check_missing(rec);
                output::write_spectrum_csv(ctx.path(stem + "_" + name + "_t" + tag(t) + ".csv"), rec, ctx.meta());
                lines.push_back(spectrum_line(rec, name, normalized_plots));
                records.push_back(std::move(rec));
            });
        }
        output::write_svg(ctx.path(stem + "_t" + tag(t) + ".svg"),
                          {(normalized_plots ? "normalized f" : "f") + std::string(" at t=") + tag(t) +
                               ", E0=" + tag(c.e0) + ", tau=" + tag(c.tau),
                           "p_par [m]", normalized_plots ? "f / max f" : "f", true},
                          lines);
        if (!summary) continue;
        ordered_json entry{{"t", t}, {"spectra", ordered_json::array()}};
        for (const SpectrumRecord& rec : records) {
            ordered_json maxima = ordered_json::array();
            for (std::size_t i : local_maxima(rec.f_values)) maxima.push_back(rec.p_grid[i]);
            entry["spectra"].push_back({{"basis", basis_name(rec.basis)}, {"local_maxima", maxima}});
        }
        if (records.size() >= 2) {
            ctx.guarded("normalized distance t=" + tag(t), [&] {
                entry["l2_normalized"] = l2_distance(normalized_spectrum(records[0]), normalized_spectrum(records[1]));
            });
        }
        summary->push_back(entry);
    }
}

void stage_detection(Context& ctx) {
    const RunConfig& c = ctx.config;
    const BasisChoice basis = c.basis_choices().front();
    const std::vector<double> p_grid = c.momentum_grid();
    const std::vector<double> t_grid = c.time_grid();
    ordered_json rows = ordered_json::array();
    std::string csv = "e0,t_cp,t_dom,t_dis\n";
    std::vector<output::Line> lines = {{"t_cp", {}, {}}, {"t_dom", {}, {}}, {"t_dis", {}, {}}};
    for (double e0 : c.fields) {
        const PulseParams pulse(e0, c.tau);
        ctx.note("stages E0=" + tag(e0));
        ctx.guarded("stages E0=" + tag(e0), [&] {
            std::vector<SpectrumRecord> records;
            records.reserve(t_grid.size());
            for (double t : t_grid) {
                records.push_back(lms_sweep(pulse, t, basis, p_grid, c.solver));
                ctx.check_missing(records.back());
            }
            const StageTimes st = detect_peak_stages(records);
            rows.push_back({{"e0", e0},
                            {"t_cp", optional_value(st.t_cp)},
                            {"t_dom", optional_value(st.t_dom)},
                            {"t_dis", optional_value(st.t_dis)}});
            auto field = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
            csv += format_number(e0) + "," + field(st.t_cp) + "," + field(st.t_dom) + "," + field(st.t_dis) + "\n";
            const std::optional<double> vals[3] = {st.t_cp, st.t_dom, st.t_dis};
            for (int k = 0; k < 3; ++k) {
                lines[k].x.push_back(e0);
                lines[k].y.push_back(vals[k].value_or(std::nan("")));
            }
        });
    }
    ctx.write_json("stages.json", {{"scenario", scenario_name(c.scenario)},
                                   {"basis", basis_name(basis)},
                                   {"tau", c.tau},
                                   {"time_grid", {{"lo", c.time.lo}, {"hi", c.time.hi}, {"step", c.time.step}}},
                                   {"momentum_grid",
                                    {{"lo", c.momentum.lo}, {"hi", c.momentum.hi}, {"step", c.momentum.step}}},
                                   {"rows", rows}});
    output::write_text(ctx.path("stages.csv"), csv);
    output::write_svg(ctx.path("stages.svg"), {"stage times, tau=" + tag(c.tau), "E0", "t [1/m]", false}, lines);
}

void scaled_overlap(Context& ctx) {
    const RunConfig& c = ctx.config;
    const PulseParams pulse = c.pulse();
    const std::vector<double> grid = c.momentum_grid();
    ctx.note("scaled overlap");
    ctx.guarded("scaled overlap", [&] {
        const OverlapReport rep = scaled_time_overlap(pulse, c.fractions, grid, c.reference_momentum());
        ordered_json entries = ordered_json::array();
        for (const OverlapEntry& e : rep.entries) {
            ctx.check_missing(e.choice1);
            ctx.check_missing(e.choice2);
            const std::string k = tag(e.fraction);
            output::write_spectrum_csv(ctx.path("overlap_k" + k + "_choice1.csv"), e.choice1,
                                       ctx.meta({{"fraction", k}}));
            output::write_spectrum_csv(ctx.path("overlap_k" + k + "_choice2.csv"), e.choice2,
                                       ctx.meta({{"fraction", k}}));
            output::write_svg(ctx.path("overlap_k" + k + ".svg"),
                              {"normalized f at k=" + k + " of t_out", "p_par [m]", "f / max f", true},
                              {spectrum_line(e.choice1, "choice1 t=" + tag(e.t_choice1), true),
                               spectrum_line(e.choice2, "choice2 t=" + tag(e.t_choice2), true)});
            entries.push_back({{"fraction", e.fraction},
                               {"t_choice1", e.t_choice1},
                               {"t_choice2", e.t_choice2},
                               {"l2_normalized", e.l2_normalized},
                               {"max_relative", e.max_relative},
                               {"contrast_choice1", e.contrast_choice1},
                               {"contrast_choice2", e.contrast_choice2}});
        }
        ctx.write_json("overlap.json", {{"scenario", scenario_name(c.scenario)},
                                        {"e0", c.e0},
                                        {"tau", c.tau},
                                        {"p_ref", {c.p_par, c.p_perp}},
                                        {"t_out_choice1", rep.t_out_choice1},
                                        {"t_out_choice2", rep.t_out_choice2},
                                        {"entries", entries}});
    });
}

void late_time_fit(Context& ctx) {
    const RunConfig& c = ctx.config;
    const PulseParams pulse = c.pulse();
    const std::vector<double> grid = c.momentum_grid();
    ordered_json rows = ordered_json::array();
    for (const BasisChoice& basis : c.basis_choices()) {
        const std::string name = basis_name(basis);
        std::string csv =
            "p_par,frequency,tau_omega1,c0_fit,c0_closed,c1_amplitude_fit,c1_model_amplitude,residual\n";
        for (double pp : grid) {
            const Momentum p{pp, 0.0};
            ctx.guarded("late-time fit " + name + " p_par=" + tag(pp), [&] {
                const SauterHypParams hp = hyp_params(pulse, p);
                const NumericExtraction ex = numeric_extraction(pulse, p, basis);
                const double c0_closed = 2.0 * hp.omega1 * gamma_factors(hp, pulse).gamma2_sq;
                const OscillationModel model = c1_dominant(pulse, p, basis);
                const double tw1 = pulse.tau() * hp.omega1;
                csv += format_number(pp) + "," + format_number(ex.frequency) + "," + format_number(tw1) + "," +
                       format_number(ex.c0) + "," + format_number(c0_closed) + "," +
                       format_number(ex.c1_amplitude) + "," + format_number(model.amplitude()) + "," +
                       format_number(ex.residual) + "\n";
                rows.push_back({{"basis", name},
                                {"p_par", pp},
                                {"frequency", ex.frequency},
                                {"tau_omega1", tw1},
                                {"c0_fit", ex.c0},
                                {"c0_closed", c0_closed},
                                {"c1_mean_fit", ex.c1_mean},
                                {"c1_amplitude_fit", ex.c1_amplitude},
                                {"c1_phase_fit", ex.c1_phase},
                                {"c2_mean_fit", ex.c2_mean},
                                {"c1_model_amplitude", model.amplitude()},
                                {"residual", ex.residual}});
            });
        }
        output::write_text(ctx.path("late_time_" + name + ".csv"), csv);
    }
    ctx.write_json("late_time.json",
                   {{"scenario", scenario_name(c.scenario)}, {"e0", c.e0}, {"tau", c.tau}, {"rows", rows}});

    // Exact f against the truncated series at the reference momentum.
    ctx.guarded("late-time curve", [&] {
        const Momentum p{c.p_par, 0.0};
        std::vector<output::Line> lines;
        for (const BasisChoice& basis : c.basis_choices()) {
            output::Line exact{basis_name(basis) + " exact", {}, {}};
            output::Line series{basis_name(basis) + " series", {}, {}};
            const double norm_sq = late_time_norm_sq(pulse, p);
            for (int k = 0; k <= 200; ++k) {
                const double s = std::pow(10.0, -2.0 - 0.015 * k);
                const YPoint yp{1.0 - s, s};
                exact.x.push_back(std::log(s));
                exact.y.push_back(distribution(pulse, p, t_of_y(pulse, yp), basis).f);
                series.x.push_back(std::log(s));
                series.y.push_back(expansion_coeffs(pulse, p, yp.y, basis).truncated_f(norm_sq, s));
            }
            lines.push_back(std::move(exact));
            lines.push_back(std::move(series));
        }
        output::write_svg(ctx.path("late_time.svg"),
                          {"late-time f at p_par=" + tag(c.p_par), "ln(1 - y)", "f", true}, lines);
    });
}

std::string manifest(const RunConfig& c, const RunSummary& s) {
    std::string out = to_toml(c);
    out += "\n[manifest]\n";
    out += "pairgen_version = \"" + version_string() + "\"\n";
    out += "boost_version = \"" + std::string(BOOST_LIB_VERSION) + "\"\n";
    out += "compiler = \"" + std::string(__VERSION__) + "\"\n";
    out += "threads_used = " + std::to_string(thread_count()) + "\n";
    out += "wall_seconds = " + format_number(s.wall_seconds) + "\n";
    out += "files = [";
    for (std::size_t i = 0; i < s.files.size(); ++i) out += (i ? ", \"" : "\"") + s.files[i].generic_string() + "\"";
    out += "]\n";
    out += "failures = " + ordered_json(s.failures).dump() + "\n";
    return out;
}

}  // namespace

std::string version_string() { return PAIRGEN_VERSION; }

RunSummary run(const RunConfig& config, std::ostream* log) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    if (config.threads > 0) set_thread_count(config.threads);
    Context ctx(config, log);
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + config.output_dir.string() + "': " + ec.message());

    switch (config.scenario) {
        case Scenario::TimeEvolutionAtFixedP: time_evolution(ctx); break;
        case Scenario::LmsAtTimes: lms_at_times(ctx, false, nullptr); break;
        case Scenario::StageDetection: stage_detection(ctx); break;
        case Scenario::ScaledOverlap: scaled_overlap(ctx); break;
        case Scenario::MultiphotonSpectra: {
            ordered_json entries = ordered_json::array();
            lms_at_times(ctx, true, &entries);
            ctx.write_json("multiphoton.json", {{"scenario", scenario_name(config.scenario)},
                                                {"e0", config.e0},
                                                {"tau", config.tau},
                                                {"keldysh", keldysh(config.pulse())},
                                                {"times", entries}});
            break;
        }
        case Scenario::LateTimeFit: late_time_fit(ctx); break;
    }
    if (!ctx.summary.failures.empty()) {
        ctx.write_json("failures.json", {{"failures", ctx.summary.failures}});
    }
    ctx.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ctx.summary.files.emplace_back("manifest.toml");
    output::write_text(config.output_dir / "manifest.toml", manifest(config, ctx.summary));
    return ctx.summary;
}

}  // namespace pairgen
