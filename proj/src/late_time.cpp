#include "pairgen/late_time.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "pairgen/bogoliubov.hpp"
#include "pairgen/errors.hpp"

namespace pairgen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kHyperbolicBudget = 700.0;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    return a <= -kPi ? a + 2.0 * kPi : a;
}

void check_budget(std::initializer_list<double> args) {
    for (double x : args) {
        if (std::abs(x) > kHyperbolicBudget) {
            throw OverflowError("gamma_factors: hyperbolic argument " + std::to_string(x) +
                                " exceeds the log-space budget");
        }
    }
}

struct LogGammas {
    Complex log_g1;
    Complex log_g2;
};

LogGammas log_gammas(const SauterHypParams& hp) {
    const Complex d = hp.c - hp.a - hp.b;
    const Complex lgc = log_gamma_complex(hp.c);
    return {lgc + log_gamma_complex(d - 1.0) - log_gamma_complex(hp.c - hp.a) - log_gamma_complex(hp.c - hp.b),
            lgc + log_gamma_complex(-d) - log_gamma_complex(hp.a) - log_gamma_complex(hp.b)};
}

// Large-argument closed form of arg(Gamma1 conj Gamma2), written out term by term.
double stirling_phase(const SauterHypParams& hp, double tau) {
    const double w0 = hp.omega0;
    const double w1 = hp.omega1;
    const double l = hp.lambda;
    const double tw1 = tau * w1;
    const double dm = w0 - w1;
    const double sp = w0 + w1;
    auto term = [](double m, double inner) { return m * (-2.0 + std::log(inner)); };
    const double h1 = l + 0.5 * tau * dm;
    const double h2 = l - 0.5 * tau * dm;
    const double h3 = l + 0.5 * tau * sp;
    double acc = 2.0 * kPi + 4.0 * tw1 - 4.0 * std::atan(tw1) - 4.0 * tw1 * (-1.0 + std::log(tw1)) -
                 4.0 * tw1 * std::log(tw1);
    acc -= term(2.0 * l + dm * tau, 0.25 + h1 * h1);
    acc += term(2.0 * l - dm * tau, 0.25 + h2 * h2);
    acc -= term(2.0 * l - sp * tau, 0.25 * (1.0 + h1 * h1));
    acc += term(2.0 * l + sp * tau, 0.25 * (1.0 + h3 * h3));
    return 0.25 * acc;
}

struct Coefficients {
    // Polynomials in s of the positive-frequency (P) and negative-frequency (R)
    // parts of the bracket; R0 = 0.
    Complex p0, p1, p2;
    Complex r1, r2;
};

Coefficients bracket_coefficients(const SauterHypParams& hp, const PulseParams& pulse,
                                  const LateTimeSeries& ls, double y) {
    const double tau = pulse.tau();
    const Complex a = hp.a, b = hp.b, c = hp.c;
    const Complex d = c - a - b;  // -i tau w1
    const Complex e1{hp.omega1 - hp.omega0 + ls.w1, ls.v1};
    const Complex e2{ls.w2, ls.v2};
    const Complex top = 2.0 * kI * y * hp.omega1;  // -(2/tau) y d
    const Complex cacb = (c - a) * (c - b);
    Coefficients k;
    k.p0 = top;
    k.p1 = top * cacb / d + kI * e1;
    k.p2 = top * cacb * (c - a + 1.0) * (c - b + 1.0) / (2.0 * d * (d + 1.0)) + kI * e2 +
           kI * e1 * cacb / (d + 1.0);
    const Complex ab = a * b;
    k.r1 = (2.0 / tau) * y * ab + kI * (d - 1.0) * e1;
    k.r2 = (2.0 / tau) * y * ab * (1.0 + a) * (1.0 + b) / (2.0 - d) + kI * (d - 1.0) * (e2 + e1 * ab / (1.0 - d));
    return k;
}

}  // namespace

GammaFactors gamma_factors(const SauterHypParams& hp, const PulseParams& pulse) {
    const double tau = pulse.tau();
    const double w0 = hp.omega0, w1 = hp.omega1, l = hp.lambda;
    const double sum = w0 + w1, diff = w1 - w0;
    const double s0 = kPi * tau * w0, s1 = kPi * tau * w1;
    const double a1 = 0.5 * kPi * (2.0 * l - tau * sum), b1 = 0.5 * kPi * (2.0 * l + tau * sum);
    const double a2 = 0.5 * kPi * (tau * diff - 2.0 * l), b2 = 0.5 * kPi * (tau * diff + 2.0 * l);
    check_budget({s0, s1, a1, b1, a2, b2});

    const double log_den = log_sinh(s0) + log_sinh(s1);
    const double log_ratio = std::log(w0 / w1);
    GammaFactors g;
    const double log_g1_sq = log_ratio - std::log1p(tau * tau * w1 * w1) + log_cosh(a1) + log_cosh(b1) - log_den;
    const double log_g2_sq = log_ratio + log_cosh(a2) + log_cosh(b2) - log_den;
    g.gamma1_sq = std::exp(log_g1_sq);
    g.gamma2_sq = std::exp(log_g2_sq);
    g.cross_mag = std::exp(0.5 * (log_g1_sq + log_g2_sq));

    const LogGammas lg = log_gammas(hp);
    g.gamma1 = std::polar(std::sqrt(g.gamma1_sq), lg.log_g1.imag());
    g.gamma2 = std::polar(std::sqrt(g.gamma2_sq), lg.log_g2.imag());
    g.cross_phase = wrap_angle(lg.log_g1.imag() - lg.log_g2.imag());
    g.cross_phase_stirling = stirling_phase(hp, tau);
    g.phase_offset = wrap_angle(g.cross_phase - g.cross_phase_stirling);
    return g;
}

DirectGammaModuli gamma_moduli_direct(const SauterHypParams& hp) {
    const LogGammas lg = log_gammas(hp);
    return {std::exp(2.0 * lg.log_g1.real()), std::exp(2.0 * lg.log_g2.real())};
}

LateTimeSeries late_time_series(const PulseParams& pulse, const Momentum& p, const BasisChoice& basis) {
    if (basis.omega_order != 0) throw DomainError("late-time expansion requires Omega = omega (j = 0)");
    const double tau = pulse.tau();
    const double ee0 = pulse.charge() * pulse.e0();
    const double u = p.p_par - ee0 * tau;  // kinetic momentum at y = 1
    const double k = 2.0 * ee0 * tau;      // d(kinetic momentum)/ds
    const double et2 = p.transverse_energy_sq();
    const double w1_inf = std::sqrt(u * u + et2);
    LateTimeSeries ls;
    ls.w1 = k * u / w1_inf;
    ls.w2 = k * k * et2 / (2.0 * w1_inf * w1_inf * w1_inf);
    if (basis.v_variant == VVariant::NaturalChoice) {
        // V = -omega'/(2 omega) with ds/dt = -(2/tau) s (1 - s)
        const double r = ls.w1 / w1_inf;
        ls.v1 = r / tau;
        ls.v2 = ((2.0 * ls.w2 - ls.w1) / w1_inf - r * r) / tau;
    }
    const double r = ls.w1 / w1_inf;
    ls.nu0 = 1.0 / (2.0 * w1_inf);
    ls.nu1 = -ls.nu0 * r;
    ls.nu2 = ls.nu0 * (r * r - ls.w2 / w1_inf);
    return ls;
}

double late_time_norm_sq(const PulseParams& pulse, const Momentum& p) {
    return 1.0 / (2.0 * omega_asymptotics(pulse, p).omega0);
}

ExpansionCoeffs expansion_coeffs(const PulseParams& pulse, const Momentum& p, double y,
                                 const BasisChoice& basis) {
    if (!(y > 0.9 && y < 1.0)) throw DomainError("expansion_coeffs: requires 0.9 < y < 1");
    const LateTimeSeries ls = late_time_series(pulse, p, basis);
    ExpansionCoeffs out;
    if (pulse.free_field()) {
        out.valid_from_y = 0.9;
        return out;
    }
    const SauterHypParams hp = hyp_params(pulse, p);
    const GammaFactors g = gamma_factors(hp, pulse);
    const Coefficients k = bracket_coefficients(hp, pulse, ls, y);
    const double s = 1.0 - y;
    // Gamma2 conj(Gamma1) e^{i theta} = |.| e^{-i Upsilon}
    out.upsilon = g.cross_phase + pulse.tau() * hp.omega1 * std::log(s);
    const Complex x = std::polar(g.cross_mag, -out.upsilon);

    const double g2 = g.gamma2_sq, g1 = g.gamma1_sq;
    const double pp0 = std::norm(k.p0);
    const double pp01 = 2.0 * std::real(k.p0 * std::conj(k.p1));
    const double pp_2 = std::norm(k.p1) + 2.0 * std::real(k.p0 * std::conj(k.p2));
    const Complex q1 = k.p0 * std::conj(k.r1);
    const Complex q2 = k.p0 * std::conj(k.r2) + k.p1 * std::conj(k.r1);

    out.c0 = ls.nu0 * g2 * pp0;
    const double n1 = ls.nu1 * g2 * pp0 + ls.nu0 * g2 * pp01;
    out.c1 = n1 + 2.0 * ls.nu0 * std::real(x * q1);
    const double n2 = ls.nu2 * g2 * pp0 + ls.nu1 * g2 * pp01 + ls.nu0 * (g2 * pp_2 + g1 * std::norm(k.r1));
    const Complex osc2 = ls.nu1 * q1 + ls.nu0 * q2;
    out.c2 = n2 + 2.0 * std::real(x * osc2);

    // Trust the truncation while each correction stays below 10% of C0.
    const double env1 = std::abs(n1) + 2.0 * ls.nu0 * std::abs(x * q1);
    const double env2 = std::abs(n2) + 2.0 * std::abs(x * osc2);
    double smax = 0.1;
    if (env1 > 0.0) smax = std::min(smax, 0.1 * out.c0 / env1);
    if (env2 > 0.0) smax = std::min(smax, std::sqrt(0.1 * out.c0 / env2));
    out.valid_from_y = 1.0 - smax;
    return out;
}

ExpansionCoeffs NumericExtraction::as_coeffs() const {
    ExpansionCoeffs c;
    c.c0 = c0;
    c.c1 = c1_mean;
    c.c2 = c2_mean;
    return c;
}

NumericExtraction numeric_extraction(const PulseParams& pulse, const Momentum& p, const BasisChoice& basis,
                                     const ExtractionOptions& options) {
    NumericExtraction out;
    if (pulse.free_field()) return out;
    if (!(options.y_lo > 0.0 && options.y_lo < options.y_hi && options.y_hi < 1.0) || options.points < 16 ||
        options.poly_degree < 0 || options.kernel_degree < 1) {
        throw ValidationError("numeric_extraction: invalid window or degrees");
    }
    const std::size_t n = options.points;
    const double x_lo = std::log(1.0 - options.y_hi);
    const double x_hi = std::log(1.0 - options.y_lo);
    const double s_max = 1.0 - options.y_lo;
    const double norm_sq = late_time_norm_sq(pulse, p);

    Eigen::VectorXd xs(n), sig(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double s = std::exp(x);
        xs[i] = x;
        sig[i] = s / s_max;
        g[i] = distribution_y_form(pulse, p, YPoint{1.0 - s, s}, basis) / norm_sq;
    }

    const int np = options.poly_degree + 1;
    const int nk = options.kernel_degree;
    auto design = [&](double w, bool with_kernel) {
        Eigen::MatrixXd m(n, np + (with_kernel ? 2 * nk : 0));
        for (std::size_t i = 0; i < n; ++i) {
            double pw = 1.0;
            for (int k = 0; k < np; ++k, pw *= sig[i]) m(i, k) = pw;
            if (!with_kernel) continue;
            const double cw = std::cos(w * xs[i]);
            const double sw = std::sin(w * xs[i]);
            pw = sig[i];
            for (int k = 0; k < nk; ++k, pw *= sig[i]) {
                m(i, np + 2 * k) = pw * cw;
                m(i, np + 2 * k + 1) = pw * sw;
            }
        }
        return m;
    };
    auto solve = [&](const Eigen::MatrixXd& m, Eigen::VectorXd& coef) {
        coef = m.colPivHouseholderQr().solve(g);
        return (m * coef - g).norm();
    };

    // Starting frequency from the zero crossings of the detrended data.
    Eigen::VectorXd coef;
    const Eigen::MatrixXd m0 = design(0.0, false);
    solve(m0, coef);
    const Eigen::VectorXd detrended = g - m0 * coef;
    std::size_t crossings = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if ((detrended[i] > 0.0) != (detrended[i - 1] > 0.0)) ++crossings;
    }
    const double span = x_hi - x_lo;
    const double dx = span / static_cast<double>(n - 1);
    if (crossings < 4) throw IllConditionedError("numeric_extraction: no resolvable oscillation in the window");
    const double w_start = kPi * static_cast<double>(crossings) / span;
    // The grid must resolve the period comfortably (also ~the largest W scanned).
    if (2.0 * kPi / (1.5 * w_start) / dx < options.min_points_per_period) {
        throw IllConditionedError("numeric_extraction: ill-conditioned fit, oscillation period unresolved by the grid");
    }

    auto objective = [&](double w) {
        Eigen::VectorXd c;
        return solve(design(w, true), c);
    };
    // Coarse scan (step well inside one basin of the residual), then golden section.
    const double step = 0.1 * 2.0 * kPi / span;
    double best_w = w_start;
    double best = objective(w_start);
    for (double w = 0.6 * w_start; w <= 1.4 * w_start; w += step) {
        const double r = objective(w);
        if (r < best) {
            best = r;
            best_w = w;
        }
    }
    double lo = best_w - step, hi = best_w + step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = objective(c1), f2 = objective(c2);
    for (int it = 0; it < 80 && hi - lo > 1e-12 * best_w; ++it) {
        if (f1 < f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = objective(c1);
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = objective(c2);
        }
    }
    const double w = 0.5 * (lo + hi);
    const double resid = solve(design(w, true), coef);

    out.frequency = w;
    out.points = n;
    out.residual = resid / g.norm();
    out.c0 = coef[0];
    if (np > 1) out.c1_mean = coef[1] / s_max;
    if (np > 2) out.c2_mean = coef[2] / (s_max * s_max);
    // cos(Wx) a + sin(Wx) b = Re((a - i b) e^{iWx})
    const Complex k1{coef[np], -coef[np + 1]};
    out.c1_amplitude = std::abs(k1) / s_max;
    out.c1_phase = std::arg(k1);
    if (nk > 1) out.c2_amplitude = std::abs(Complex{coef[np + 2], -coef[np + 3]}) / (s_max * s_max);
    return out;
}

double OscillationModel::amplitude() const { return std::hypot(cos_coeff, sin_coeff); }

OscillationModel c1_dominant(const PulseParams& pulse, const Momentum& p, const BasisChoice& basis) {
    if (p.p_perp != 0.0) throw DomainError("c1_dominant: defined for p_perp = 0 only");
    OscillationModel m;
    if (pulse.free_field()) return m;
    const SauterHypParams hp = hyp_params(pulse, p);
    const GammaFactors g = gamma_factors(hp, pulse);
    const double tau = pulse.tau();
    const double ee0 = pulse.charge() * pulse.e0();
    const double w0 = hp.omega0, w1 = hp.omega1, l = hp.lambda;
    const double u = p.p_par - ee0 * tau;
    const double w1c = 2.0 * ee0 * tau * u / w1;
    const double v1 = basis.v_variant == VVariant::NaturalChoice ? 4.0 * ee0 * u / (1.0 + u * u) : 0.0;
    const double nu0 = 1.0 / (2.0 * w1);
    const double pref = 2.0 * g.cross_mag * nu0 * w1;
    m.cos_coeff = pref * (1.0 + 4.0 * l * l + tau * (v1 + 2.0 * w1 * tau * (w1 - w0 + w1c) - (w0 - w1) * (w0 - w1) * tau));
    m.sin_coeff = pref * (2.0 * w1c - tau * w1 * v1);
    m.phase = g.cross_phase;
    m.frequency = tau * w1;
    return m;
}

}  // namespace pairgen
