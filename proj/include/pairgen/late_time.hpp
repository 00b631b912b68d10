#pragma once

#include <vector>

#include "pairgen/adiabatic_basis.hpp"
#include "pairgen/field_model.hpp"

namespace pairgen {

// Late-time (y -> 1) structure of f. With s = 1 - y the exact mode splits into
//   Gamma2 s^{-i tau w1} (positive frequency) + Gamma1 (negative frequency),
// and  f = |N|^2 (C0 + s C1 + s^2 C2 + ...),  |N|^2 = 1/(2 w0).

struct GammaFactors {
    Complex gamma1;  // Gamma(c) Gamma(c-a-b-1) / (Gamma(c-a) Gamma(c-b))
    Complex gamma2;  // Gamma(c) Gamma(a+b-c) / (Gamma(a) Gamma(b))
    double gamma1_sq = 0.0;
    double gamma2_sq = 0.0;
    double cross_mag = 0.0;          // |Gamma1 conj(Gamma2)|
    double cross_phase = 0.0;        // arg(Gamma1 conj(Gamma2)), in (-pi, pi]
    double cross_phase_stirling = 0.0;  // large-argument closed form, not reduced mod 2 pi
    double phase_offset = 0.0;       // cross_phase - cross_phase_stirling reduced to (-pi, pi]
};

/// Moduli from the closed cosh/sinh forms (log space); phases from log-gamma.
/// Throws OverflowError when a hyperbolic argument exceeds ~700.
GammaFactors gamma_factors(const SauterHypParams& hp, const PulseParams& pulse);

/// |Gamma1|^2 and |Gamma2|^2 evaluated directly from log_gamma_complex.
struct DirectGammaModuli {
    double gamma1_sq;
    double gamma2_sq;
};
DirectGammaModuli gamma_moduli_direct(const SauterHypParams& hp);

/// s-expansion coefficients of omega, V and 1/(2 Omega) around y = 1.
struct LateTimeSeries {
    double w1 = 0.0, w2 = 0.0;    // omega ~ w1_inf + w1 s + w2 s^2
    double v1 = 0.0, v2 = 0.0;    // V ~ v1 s + v2 s^2
    double nu0 = 0.0, nu1 = 0.0, nu2 = 0.0;  // 1/(2 Omega)
};
LateTimeSeries late_time_series(const PulseParams& pulse, const Momentum& p, const BasisChoice& basis);

struct ExpansionCoeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double valid_from_y = 1.0;
    double upsilon = 0.0;  // rho + tau w1 ln(1 - y)

    /// |N|^2 (C0 + s C1 + s^2 C2)
    double truncated_f(double norm_sq, double s) const { return norm_sq * (c0 + s * (c1 + s * c2)); }
};

/// Coefficients at y (> 0.9) for bases with Omega = omega (j = 0).
/// Throws DomainError for y <= 0.9 or j != 0.
ExpansionCoeffs expansion_coeffs(const PulseParams& pulse, const Momentum& p, double y,
                                 const BasisChoice& basis);

/// |N|^2 = 1/(2 w0).
double late_time_norm_sq(const PulseParams& pulse, const Momentum& p);

/// Fit of the exact f on a late-y window to
///   A(s) + Re(K(s) exp(-i W ln s)),  A, K polynomials, W free.
struct NumericExtraction {
    double c0 = 0.0;            // A(0) / |N|^2
    double c1_mean = 0.0;       // A'(0) / |N|^2
    double c1_amplitude = 0.0;  // |K'(0)| / |N|^2
    double c1_phase = 0.0;      // arg K'(0)
    double c2_mean = 0.0;
    double c2_amplitude = 0.0;
    double frequency = 0.0;     // W, expected tau w1
    double residual = 0.0;      // rms residual / rms f
    std::size_t points = 0;

    ExpansionCoeffs as_coeffs() const;
};

struct ExtractionOptions {
    double y_lo = 0.995;
    double y_hi = 0.99995;
    std::size_t points = 4000;
    int poly_degree = 4;        // degree of A
    int kernel_degree = 3;      // degree of K; K(0) = 0 is imposed
    double min_points_per_period = 8.0;
};

/// Throws IllConditionedError when the oscillation is not
/// resolved by the grid. Returns all zeros for the free field.
NumericExtraction numeric_extraction(const PulseParams& pulse, const Momentum& p, const BasisChoice& basis,
                                     const ExtractionOptions& options = {});

/// Dominant late-time model  C1 ~ cos_coeff cos(Upsilon) + sin_coeff sin(Upsilon),
/// evaluated as the simplified closed form quoted for the longitudinal
/// spectrum (V1 taken as 4 e E0 u/(1+u^2), u = p - e E0 tau, for the natural basis).
struct OscillationModel {
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
    double phase = 0.0;      // rho
    double frequency = 0.0;  // tau w1
    double amplitude() const;
};
/// Requires p_perp == 0 (DomainError otherwise).
OscillationModel c1_dominant(const PulseParams& pulse, const Momentum& p, const BasisChoice& basis);

}  // namespace pairgen
