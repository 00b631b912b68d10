#include "pairgen/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "pairgen/bogoliubov.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/late_time.hpp"
#include "pairgen/spectra.hpp"

namespace pairgen::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// The (E0, tau) pairs the reference results are quoted for.
std::vector<PulseParams> reference_pulses() {
    return {PulseParams(0.1, 10.0), PulseParams(0.2, 10.0), PulseParams(0.3, 10.0), PulseParams(0.1, 5.0)};
}

bool near_pole(Complex z) {
    if (z.real() > 0.5) return false;
    return std::abs(z - std::round(z.real())) < 0.05;
}

void special_function_identities(CriterionResult& r, const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double recurrence = 0.0, reflection = 0.0;
    int n = 0;
    while (n < 1000) {
        const Complex z{u(rng), u(rng)};
        if (std::abs(z) >= 10.0 || near_pole(z) || near_pole(1.0 - z)) continue;
        ++n;
        const Complex g = gamma_complex(z);
        const Complex g1 = gamma_complex(z + 1.0);
        recurrence = std::max(recurrence, rel(z * g, g1));
        const Complex expect = kPi / std::sin(kPi * z);
        reflection = std::max(reflection, rel(gamma_complex(1.0 - z) * g, expect));
    }
    double magnitude = 0.0;
    for (int k = 1; k <= 300; ++k) {
        const double x = 0.1 * k;
        const double sh = std::sinh(kPi * x);
        magnitude = std::max(magnitude, rel(std::norm(gamma_complex({0.0, x})), kPi / (x * sh)));
        magnitude = std::max(magnitude, rel(std::norm(gamma_complex({1.0, x})), kPi * x / sh));
        magnitude = std::max(magnitude, rel(std::norm(gamma_complex({0.5, x})), kPi / std::cosh(kPi * x)));
    }

    std::uniform_real_distribution<double> re_ab(-1.0, 1.0), im(-2.0, 2.0), re_c(0.5, 2.0), zz(0.5, 0.95);
    double connection = 0.0;
    for (int k = 0; k < 200;) {
        const Hyp2F1Params p{{re_ab(rng), im(rng)}, {re_ab(rng), im(rng)}, {re_c(rng), im(rng)}};
        const Complex d = p.c - p.a - p.b;
        if (std::abs(d.imag()) < 0.1 && std::abs(d.real() - std::round(d.real())) < 0.1) continue;
        ++k;
        const double z = zz(rng);
        connection = std::max(connection, rel(hyp2f1_near_one(p, 1.0 - z), hyp2f1_series(p, z)));
    }

    std::uniform_real_distribution<double> zr(-0.6, 0.6);
    double derivative = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Hyp2F1Params p{{re_ab(rng), im(rng)}, {re_ab(rng), im(rng)}, {re_c(rng), im(rng)}};
        const Complex z{zr(rng), zr(rng)};
        const double h = 1e-5;
        const Complex fd = (hyp2f1(p, z + h) - hyp2f1(p, z - h)) / (2.0 * h);
        derivative = std::max(derivative, rel(fd, hyp2f1_derivative(p, z)));
    }

    r.add("recurrence", recurrence);
    r.add("reflection", reflection);
    r.add("magnitude", magnitude);
    r.add("connection", connection);
    r.add("derivative_fd", derivative);
    r.passed = recurrence < 1e-9 && reflection < 1e-9 && magnitude < 1e-9 && connection < 1e-8 && derivative < 1e-6;
}

void oracle_equivalence(CriterionResult& r, const SuiteOptions&) {
    const double tau = 10.0;
    const std::vector<double> ps = {-3.0, -1.5, 0.0, 1.5, 3.0};
    const std::vector<double> fields = {0.1, 0.2, 0.3};
    const std::vector<double> samples = uniform_grid(-3.0 * tau, 5.0 * tau, tau / 20.0);
    double worst = 0.0, drift = 0.0;
    for (double e0 : fields) {
        const PulseParams pulse(e0, tau);
        for (double pp : ps) {
            const Momentum p{pp, 0.0};
            const OdeResult ode = ode_oracle(pulse, p, samples);
            drift = std::max(drift, ode.max_wronskian_drift);
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const ModeState ex = exact_mode_at_time(pulse, p, samples[i]);
                worst = std::max(worst, rel(ex.phi, ode.states[i].phi));
                worst = std::max(worst, rel(ex.phi_dot, ode.states[i].phi_dot));
            }
        }
    }
    r.add("max_rel_diff", worst);
    r.add("max_wronskian_drift", drift);
    r.passed = worst < 1e-6 && drift < 1e-9;
}

void bogoliubov_constraint(CriterionResult& r, const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed + 3);
    const std::vector<PulseParams> pulses = reference_pulses();
    std::uniform_int_distribution<std::size_t> pick(0, pulses.size() - 1);
    std::uniform_real_distribution<double> ppar(-3.0, 3.0), pperp(0.0, 1.0), unit(0.0, 1.0);
    double worst = 0.0;
    std::size_t violations = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const PulseParams& pulse = pulses[pick(rng)];
        const Momentum p{ppar(rng), pperp(rng)};
        const double t = pulse.tau() * (-3.0 + 8.0 * unit(rng));
        const BasisChoice basis = unit(rng) < 0.5 ? BasisChoice::choice1() : BasisChoice::choice2();
        try {
            const ModeState mode = exact_mode_at_time(pulse, p, t);
            const AdiabaticFrame frame = adiabatic_frame(pulse, p, t, basis, default_phase_origin(pulse));
            worst = std::max(worst, std::abs(bogoliubov_coefficients(mode, frame).norm_defect()));
        } catch (const ConstraintViolation&) {
            ++violations;
            worst = std::max(worst, kConstraintLimit);
        }
    }
    r.add("samples", n);
    r.add("max_defect", worst);
    r.add("violations", static_cast<double>(violations));
    r.passed = violations == 0 && worst < 1e-7;
}

void asymptotic_basis_independence(CriterionResult& r, const SuiteOptions&) {
    const PulseParams pulse(0.2, 10.0);
    const double t = 10.0 * pulse.tau();
    const std::vector<double> grid = uniform_grid(-3.0, 3.0, 0.05);
    const SpectrumRecord c1 = lms_sweep(pulse, t, BasisChoice::choice1(), grid);
    const SpectrumRecord c2 = lms_sweep(pulse, t, BasisChoice::choice2(), grid);
    double basis_diff = 0.0, asym_diff = 0.0, worst_p = kNaN;
    std::size_t compared = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double f1 = c1.f_values[i], f2 = c2.f_values[i];
        const double finf = asymptotic_distribution(pulse, Momentum{grid[i], 0.0});
        if (std::max(f1, f2) > 1e-12) {
            ++compared;
            const double d = std::abs(f1 - f2) / std::max(f1, f2);
            if (d > basis_diff) {
                basis_diff = d;
                worst_p = grid[i];
            }
        }
        if (finf > 1e-12) asym_diff = std::max({asym_diff, rel(f1, finf), rel(f2, finf)});
    }
    r.add("points_above_floor", static_cast<double>(compared));
    r.add("max_rel_basis_diff", basis_diff);
    r.add("worst_p", worst_p);
    r.add("max_rel_vs_asymptotic", asym_diff);
    r.passed = c1.missing == 0 && c2.missing == 0 && basis_diff < 1e-6 && asym_diff < 1e-4;
    if (!(basis_diff < 1e-6)) {
        r.note = "residual late-time ripple of order sqrt(f) * (1 - y) separates the bases at 10 tau";
    }
}

void table_one(CriterionResult& r, const SuiteOptions& opt) {
    const double scale = opt.coarse_stage_grids ? 2.0 : 1.0;
    const double tol = opt.coarse_stage_grids ? 5.0 : 3.0;
    const std::vector<double> fields = {0.1, 0.2, 0.3};
    const double expected[3][3] = {{48, 57, 78}, {26, 32, 52}, {12, 19, 40}};
    const std::vector<double> p_grid = uniform_grid(-4.0, 4.0, 0.01 * scale);
    StageOptions so;
    if (opt.coarse_stage_grids) so.half_window = 3;
    bool ok = true;
    std::vector<StageTimes> found;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        const PulseParams pulse(fields[k], 10.0);
        std::vector<SpectrumRecord> records;
        for (double t : uniform_grid(0.0, 10.0 * pulse.tau(), 0.25 * scale)) {
            records.push_back(lms_sweep(pulse, t, BasisChoice::choice1(), p_grid));
        }
        const StageTimes st = detect_peak_stages(records, so);
        found.push_back(st);
        const std::optional<double> vals[3] = {st.t_cp, st.t_dom, st.t_dis};
        const char* names[3] = {"t_cp", "t_dom", "t_dis"};
        char prefix[32];
        std::snprintf(prefix, sizeof prefix, "E0=%.1f:", fields[k]);
        for (int j = 0; j < 3; ++j) {
            r.add(std::string(prefix) + names[j], vals[j].value_or(kNaN));
            if (!vals[j] || std::abs(*vals[j] - expected[k][j]) > tol) ok = false;
        }
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < found.size(); ++k) {
        auto lt = [](const std::optional<double>& a, const std::optional<double>& b) { return a && b && *a < *b; };
        decreasing = decreasing && lt(found[k].t_cp, found[k - 1].t_cp) && lt(found[k].t_dom, found[k - 1].t_dom) &&
                     lt(found[k].t_dis, found[k - 1].t_dis);
    }
    r.add("strictly_decreasing", decreasing ? 1.0 : 0.0);
    r.passed = ok && decreasing;
    if (!ok) r.note = "detected stage times outside the tolerance of the reference table";
}

void transient_ordering(CriterionResult& r, const SuiteOptions&) {
    const PulseParams pulse(0.2, 10.0);
    const TransientOptions topt = transient_options_for(pulse);
    const TransientBounds b1 = detect_transient_bounds(transient_series(pulse, {}, BasisChoice::choice1()), topt);
    const TransientBounds b2 = detect_transient_bounds(transient_series(pulse, {}, BasisChoice::choice2()), topt);
    r.add("t_in_choice1", b1.t_in);
    r.add("t_out_choice1", b1.t_out);
    r.add("t_in_choice2", b2.t_in);
    r.add("t_out_choice2", b2.t_out);
    r.add("f_const", b1.f_const);
    r.passed = b1.t_out > b2.t_out;
}

void scaled_overlap(CriterionResult& r, const SuiteOptions&) {
    const PulseParams pulse(0.2, 10.0);
    const std::vector<double> fractions = {0.75, 1.25, 1.75};
    const std::vector<double> grid = uniform_grid(-4.0, 4.0, 0.01);
    const OverlapReport rep = scaled_time_overlap(pulse, fractions, grid);
    r.add("t_out_choice1", rep.t_out_choice1);
    r.add("t_out_choice2", rep.t_out_choice2);
    for (const OverlapEntry& e : rep.entries) {
        char key[32];
        std::snprintf(key, sizeof key, "k=%.2f:", e.fraction);
        r.add(std::string(key) + "l2", e.l2_normalized);
        r.add(std::string(key) + "contrast1", e.contrast_choice1);
        r.add(std::string(key) + "contrast2", e.contrast_choice2);
    }
    const OverlapEntry& early = rep.entries.front();
    const OverlapEntry& late = rep.entries.back();
    r.passed = late.l2_normalized < 1e-3 && early.contrast_choice1 > early.contrast_choice2;
    if (!(late.l2_normalized < 1e-3)) r.note = "normalized spectra at 7/4 t_out still differ";
}

void late_time_expansion(CriterionResult& r, const SuiteOptions&) {
    const PulseParams pulse(0.2, 10.0);
    double freq = 0.0, c0 = 0.0, trunc = 0.0, c0_vs_asym = 0.0;
    for (const BasisChoice basis : {BasisChoice::choice1(), BasisChoice::choice2()}) {
        for (double pp : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            const Momentum p{pp, 0.0};
            const SauterHypParams hp = hyp_params(pulse, p);
            const NumericExtraction ex = numeric_extraction(pulse, p, basis);
            freq = std::max(freq, rel(ex.frequency, pulse.tau() * hp.omega1));
            // C0 at y -> 1 with nu0 = 1/(2 w1).
            const double c0_closed = 2.0 * hp.omega1 * gamma_factors(hp, pulse).gamma2_sq;
            c0 = std::max(c0, rel(ex.c0, c0_closed));
            c0_vs_asym =
                std::max(c0_vs_asym, rel(late_time_norm_sq(pulse, p) * c0_closed, asymptotic_distribution(pulse, p)));
        }
        for (double pp : uniform_grid(-1.0, 1.0, 0.1)) {
            const Momentum p{pp, 0.0};
            const double norm_sq = late_time_norm_sq(pulse, p);
            for (int k = 0; k <= 10; ++k) {
                const double s = std::pow(10.0, -3.0 - 0.1 * k);
                const YPoint yp{1.0 - s, s};
                const double exact = distribution(pulse, p, t_of_y(pulse, yp), basis).f;
                const double approx = expansion_coeffs(pulse, p, yp.y, basis).truncated_f(norm_sq, s);
                trunc = std::max(trunc, rel(approx, exact));
            }
        }
    }
    r.add("max_rel_frequency", freq);
    r.add("max_rel_c0", c0);
    r.add("max_rel_truncated", trunc);
    r.add("c0_vs_asymptotic", c0_vs_asym);
    r.passed = freq < 1e-3 && c0 < 1e-3 && trunc < 0.05;
}

std::size_t count_maxima(const SpectrumRecord& rec, double lo, double hi, double rel_floor) {
    double peak = 0.0;
    for (double v : rec.f_values) {
        if (!std::isnan(v)) peak = std::max(peak, v);
    }
    std::size_t n = 0;
    for (std::size_t i : local_maxima(rec.f_values)) {
        const double p = rec.p_grid[i];
        if (p >= lo && p <= hi && rec.f_values[i] > rel_floor * peak) ++n;
    }
    return n;
}

void multiphoton(CriterionResult& r, const SuiteOptions&) {
    const PulseParams pulse(0.1, 5.0);
    const double gamma = keldysh(pulse);
    const std::vector<double> grid = uniform_grid(-4.0, 4.0, 0.01);
    const SpectrumRecord early = lms_sweep(pulse, 2.4 * pulse.tau(), BasisChoice::choice1(), grid);
    const std::size_t peaks = count_maxima(early, -1.2, 1.2, 0.0);
    const SpectrumRecord c1 = lms_sweep(pulse, 6.0 * pulse.tau(), BasisChoice::choice1(), grid);
    const SpectrumRecord c2 = lms_sweep(pulse, 6.0 * pulse.tau(), BasisChoice::choice2(), grid);
    const double l2 = l2_distance(normalized_spectrum(c1), normalized_spectrum(c2));
    // Unimodal: one local maximum standing above 1e-3 of the peak.
    const std::size_t m1 = count_maxima(c1, grid.front(), grid.back(), 1e-3);
    const std::size_t m2 = count_maxima(c2, grid.front(), grid.back(), 1e-3);
    r.add("keldysh", gamma);
    r.add("maxima_at_2.4tau", static_cast<double>(peaks));
    r.add("l2_at_6tau", l2);
    r.add("maxima_choice1_6tau", static_cast<double>(m1));
    r.add("maxima_choice2_6tau", static_cast<double>(m2));
    r.passed = gamma == 2.0 && peaks >= 3 && l2 < 1e-3 && m1 == 1 && m2 == 1;
}

void null_tests(CriterionResult& r, const SuiteOptions&) {
    const PulseParams free(0.0, 10.0);
    double free_max = 0.0;
    for (double pp : uniform_grid(-4.0, 4.0, 0.1)) {
        for (double t : {-80.0, -30.0, 0.0, 30.0, 100.0}) {
            for (const BasisChoice basis : {BasisChoice::choice1(), BasisChoice::choice2()}) {
                free_max = std::max(free_max, distribution(free, Momentum{pp, 0.0}, t, basis).f);
            }
        }
    }
    double early_max = 0.0;
    for (const PulseParams& pulse : reference_pulses()) {
        for (double pp : uniform_grid(-4.0, 4.0, 0.05)) {
            for (const BasisChoice basis : {BasisChoice::choice1(), BasisChoice::choice2()}) {
                early_max = std::max(early_max, distribution(pulse, Momentum{pp, 0.0}, -8.0 * pulse.tau(), basis).f);
            }
        }
    }
    r.add("max_f_free_field", free_max);
    r.add("max_f_at_minus_8tau", early_max);
    r.passed = free_max < 1e-14 && early_max < 1e-10;
}

struct Entry {
    CriterionInfo info;
    double budget_seconds;
    void (*run)(CriterionResult&, const SuiteOptions&);
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {{1, "special_function_identities", "special_functions"}, 10.0, special_function_identities},
        {{2, "oracle_equivalence", "mode_solver"}, 120.0, oracle_equivalence},
        {{3, "bogoliubov_constraint", "bogoliubov"}, 60.0, bogoliubov_constraint},
        {{4, "asymptotic_basis_independence", "bogoliubov"}, 0.0, asymptotic_basis_independence},
        {{5, "stage_times_table", "spectra_analysis"}, 1200.0, table_one},
        {{6, "transient_ordering", "spectra_analysis"}, 0.0, transient_ordering},
        {{7, "scaled_time_overlap", "spectra_analysis"}, 0.0, scaled_overlap},
        {{8, "late_time_expansion", "late_time_approx"}, 0.0, late_time_expansion},
        {{9, "multiphoton_regime", "spectra_analysis"}, 0.0, multiphoton},
        {{10, "null_tests", "bogoliubov"}, 0.0, null_tests},
    };
    return entries;
}

bool matches(const CriterionInfo& c, const std::string& sel) {
    return sel == std::to_string(c.id) || sel == c.name || sel == c.module;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
    static const std::vector<CriterionInfo> list = [] {
        std::vector<CriterionInfo> out;
        for (const Entry& e : registry()) out.push_back(e.info);
        return out;
    }();
    return list;
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
    for (const Entry& e : registry()) {
        if (e.info.id != id) continue;
        CriterionResult r;
        r.id = e.info.id;
        r.name = e.info.name;
        r.module = e.info.module;
        const auto start = std::chrono::steady_clock::now();
        try {
            e.run(r, options);
        } catch (const std::exception& ex) {
            r.passed = false;
            r.note = std::string("error: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (e.budget_seconds > 0.0 && r.seconds > e.budget_seconds) {
            r.passed = false;
            r.note += (r.note.empty() ? "" : "; ") + std::string("runtime over budget");
        }
        return r;
    }
    throw ValidationError("run_criterion: unknown criterion id " + std::to_string(id));
}

std::vector<CriterionResult> run_suite(const std::vector<std::string>& only, const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    std::set<int> selected;
    for (const CriterionInfo& c : criteria()) {
        if (only.empty()) selected.insert(c.id);
        for (const std::string& sel : only) {
            if (matches(c, sel)) selected.insert(c.id);
        }
    }
    for (const std::string& sel : only) {
        const bool known = std::any_of(criteria().begin(), criteria().end(),
                                       [&](const CriterionInfo& c) { return matches(c, sel); });
        if (!known) {
            CriterionResult r;
            r.name = sel;
            r.skipped = true;
            r.note = "unknown criterion or module";
            if (on_result) on_result(r);
            out.push_back(std::move(r));
        }
    }
    for (int id : selected) {
        CriterionResult r = run_criterion(id, options);
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    std::string line = r.skipped ? "[SKIP] " : (r.passed ? "[PASS] " : "[FAIL] ");
    if (!r.skipped) line += std::to_string(r.id) + " ";
    line += r.name;
    if (!r.module.empty()) line += " (" + r.module + ")";
    char buf[96];
    for (const Measurement& m : r.measured) {
        std::snprintf(buf, sizeof buf, " %s=%.4g", m.key.c_str(), m.value);
        line += buf;
    }
    if (!r.note.empty()) line += " -- " + r.note;
    if (!r.skipped) {
        std::snprintf(buf, sizeof buf, " [%.1f s]", r.seconds);
        line += buf;
    }
    return line;
}

}  // namespace pairgen::acceptance
