#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pairgen/bogoliubov.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/late_time.hpp"
#include "support.hpp"

using namespace pairgen;
using testing::rel_err;

TEST_SUITE("late_time") {

TEST_CASE("gamma factors against mpmath") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{0.5, 0.0};
    const SauterHypParams hp = hyp_params(pulse, p);
    const GammaFactors g = gamma_factors(hp, pulse);
    CHECK(rel_err(g.gamma2_sq, 1.12245082842322e-7) < 1e-10);
    CHECK(rel_err(g.gamma1_sq, 0.000922223382447753) < 1e-10);
    CHECK(rel_err(std::norm(g.gamma1), g.gamma1_sq) < 1e-9);
    CHECK(rel_err(std::norm(g.gamma2), g.gamma2_sq) < 1e-9);
    CHECK(rel_err(g.cross_mag, std::sqrt(g.gamma1_sq * g.gamma2_sq)) < 1e-12);
    CHECK(std::abs(g.cross_phase) <= std::numbers::pi);
    const DirectGammaModuli d = gamma_moduli_direct(hp);
    CHECK(rel_err(d.gamma1_sq, g.gamma1_sq) < 1e-9);
    CHECK(rel_err(d.gamma2_sq, g.gamma2_sq) < 1e-9);
    // f_inf = |N|^2 * 2 w1 |Gamma2|^2
    CHECK(rel_err(late_time_norm_sq(pulse, p) * 2.0 * hp.omega1 * g.gamma2_sq, asymptotic_distribution(pulse, p)) <
          1e-10);
}

TEST_CASE("series coefficients") {
    const PulseParams pulse(0.2, 10.0);
    const LateTimeSeries s = late_time_series(pulse, {0.0, 0.0}, BasisChoice::choice1());
    CHECK(s.w1 == doctest::Approx(-8.0 / std::sqrt(5.0)).epsilon(1e-13));
    CHECK(s.nu0 == doctest::Approx(1.0 / (2.0 * std::sqrt(5.0))).epsilon(1e-13));
    CHECK(s.v1 == 0.0);
    CHECK(s.v2 == 0.0);
    const Momentum p{0.4, 0.0};
    const LateTimeSeries n = late_time_series(pulse, p, BasisChoice::choice2());
    // ds/dt = -2 y s / tau, so V = -omega'/(2 omega) starts as w1 s / (tau w1_inf).
    const double w1inf = omega_asymptotics(pulse, p).omega1;
    CHECK(n.v1 == doctest::Approx(n.w1 / (pulse.tau() * w1inf)).epsilon(1e-12));
    // The expansion of omega matches omega near y = 1.
    const double sv = 1e-4;
    const double t = pulse.tau() * 0.5 * std::log((1.0 - sv) / sv);
    CHECK(std::abs(omega(pulse, p, t) - (w1inf + n.w1 * sv + n.w2 * sv * sv)) < 1e-11);
}

TEST_CASE("expansion coefficients") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{0.5, 0.0};
    const SauterHypParams hp = hyp_params(pulse, p);
    const GammaFactors g = gamma_factors(hp, pulse);
    const double norm = late_time_norm_sq(pulse, p);
    CHECK(norm == doctest::Approx(1.0 / (2.0 * hp.omega0)));
    for (const BasisChoice b : {BasisChoice::choice1(), BasisChoice::choice2()}) {
        // C0 is evaluated at finite s and reaches 2 w1 |Gamma2|^2 as s -> 0.
        CHECK(rel_err(expansion_coeffs(pulse, p, 1.0 - 1e-4, b).c0, 2.0 * hp.omega1 * g.gamma2_sq) < 1e-3);
        CHECK(rel_err(expansion_coeffs(pulse, p, 1.0 - 1e-9, b).c0, 2.0 * hp.omega1 * g.gamma2_sq) < 1e-7);
        for (double s : {1e-3, 3e-4, 1e-4}) {
            const double exact = distribution_y_form(pulse, p, {1.0 - s, s}, b);
            const ExpansionCoeffs cs = expansion_coeffs(pulse, p, 1.0 - s, b);
            CHECK(std::abs(cs.truncated_f(norm, s) - exact) < 0.05 * exact);
        }
    }
    CHECK_THROWS_AS(expansion_coeffs(pulse, p, 0.5, BasisChoice::choice1()), DomainError);
    CHECK_THROWS_AS(expansion_coeffs(pulse, p, 0.99, BasisChoice{VVariant::Zero, 1}), DomainError);
}

TEST_CASE("oscillation phase advances with ln s") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{-0.5, 0.0};
    const double w1 = omega_asymptotics(pulse, p).omega1;
    const double s1 = 1e-3;
    const double s2 = s1 * std::exp(-2.0 * std::numbers::pi / (pulse.tau() * w1));
    const ExpansionCoeffs a = expansion_coeffs(pulse, p, 1.0 - s1, BasisChoice::choice1());
    const ExpansionCoeffs b = expansion_coeffs(pulse, p, 1.0 - s2, BasisChoice::choice1());
    const double d = std::remainder(b.upsilon - a.upsilon, 2.0 * std::numbers::pi);
    CHECK(std::abs(d) < 1e-9);
    CHECK(a.c0 == doctest::Approx(b.c0).epsilon(1e-2));
}

TEST_CASE("numeric extraction recovers the late-time parameters") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{0.5, 0.0};
    const SauterHypParams hp = hyp_params(pulse, p);
    const GammaFactors g = gamma_factors(hp, pulse);
    const NumericExtraction ex = numeric_extraction(pulse, p, BasisChoice::choice1());
    CHECK(ex.points == 4000);
    CHECK(rel_err(ex.frequency, pulse.tau() * hp.omega1) < 1e-3);
    CHECK(rel_err(ex.c0, 2.0 * hp.omega1 * g.gamma2_sq) < 1e-3);
    CHECK(ex.residual < 1e-3);
    const ExpansionCoeffs c = ex.as_coeffs();
    CHECK(c.c0 == ex.c0);

    const NumericExtraction fr = numeric_extraction(PulseParams(0.0, 10.0), p, BasisChoice::choice1());
    CHECK(fr.c0 == 0.0);
    CHECK(fr.frequency == 0.0);

    ExtractionOptions bad;
    bad.y_lo = 0.9999;
    bad.y_hi = 0.999;
    CHECK_THROWS_AS(numeric_extraction(pulse, p, BasisChoice::choice1(), bad), ValidationError);
    ExtractionOptions sparse;
    sparse.points = 40;
    CHECK_THROWS_AS(numeric_extraction(pulse, p, BasisChoice::choice1(), sparse), IllConditionedError);
}

TEST_CASE("dominant oscillation model") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{0.3, 0.0};
    const double w1 = omega_asymptotics(pulse, p).omega1;
    const OscillationModel m1 = c1_dominant(pulse, p, BasisChoice::choice1());
    const OscillationModel m2 = c1_dominant(pulse, p, BasisChoice::choice2());
    CHECK(m1.frequency == doctest::Approx(pulse.tau() * w1));
    CHECK(m1.frequency == m2.frequency);
    CHECK(m1.amplitude() == doctest::Approx(std::hypot(m1.cos_coeff, m1.sin_coeff)));
    CHECK(m1.cos_coeff != m2.cos_coeff);
    CHECK(m1.sin_coeff != m2.sin_coeff);
    CHECK_THROWS_AS(c1_dominant(pulse, {0.3, 0.2}, BasisChoice::choice1()), DomainError);
}

}
