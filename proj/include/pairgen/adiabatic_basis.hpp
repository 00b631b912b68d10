#pragma once

#include <span>
#include <string>
#include <vector>

#include "pairgen/field_model.hpp"

namespace pairgen {

enum class VVariant { Zero, NaturalChoice };

/// Reference (adiabatic) basis: iteration order j of the frequency and the
/// form of the auxiliary function V.
struct BasisChoice {
    VVariant v_variant = VVariant::Zero;
    int omega_order = 0;

    /// Omega = omega, V = 0.
    static constexpr BasisChoice choice1() { return {VVariant::Zero, 0}; }
    /// Omega = omega, V = -omega'/(2 omega).
    static constexpr BasisChoice choice2() { return {VVariant::NaturalChoice, 0}; }

    bool operator==(const BasisChoice&) const = default;
};

/// "choice1", "choice2", or "zero-j<n>" / "natural-j<n>" for other orders.
std::string basis_name(const BasisChoice& basis);
/// Inverse of basis_name; throws ValidationError on unknown names.
BasisChoice parse_basis(const std::string& name);

/// Reference frequency, V and accumulated phase at one time.
struct AdiabaticFrame {
    double omega_ref = 1.0;
    double v_ref = 0.0;
    double phase = 0.0;  // integral of omega_ref from the phase origin to t
    double t = 0.0;
};

/// Omega^(j) for j in {0, 1, 2}. j = 1 uses closed-form derivatives of omega,
/// j = 2 differentiates Omega^(1) numerically. Throws ImaginaryFrequencyError
/// when (Omega^(j))^2 <= 0 and DomainError for other j.
double adiabatic_frequency(const PulseParams& pulse, const Momentum& p, double t, int j);

/// First time derivative of Omega^(j) (closed form for j = 0).
double adiabatic_frequency_rate(const PulseParams& pulse, const Momentum& p, double t, int j);

double v_function(const PulseParams& pulse, const Momentum& p, double t, const BasisChoice& basis);

/// |d omega/dt| / omega^2, the usual adiabaticity measure.
double adiabaticity(const PulseParams& pulse, const Momentum& p, double t);

/// Integral of Omega^(j) over [t0, t]; adaptive Gauss-Kronrod.
double wkb_phase(const PulseParams& pulse, const Momentum& p, double t, int j, double t0);

/// phi~+(t) = exp(-i phase)/sqrt(2 Omega^(j)); phi~- is its conjugate.
Complex wkb_mode(const PulseParams& pulse, const Momentum& p, double t, int j, double t0);

/// Default phase origin, equal to the default ODE start time.
double default_phase_origin(const PulseParams& pulse);

/// Frame at t with the WKB phase measured from t0.
AdiabaticFrame adiabatic_frame(const PulseParams& pulse, const Momentum& p, double t,
                               const BasisChoice& basis, double t0);
/// Frame without the phase (set to 0). Enough for f, which only depends on moduli.
AdiabaticFrame adiabatic_frame(const PulseParams& pulse, const Momentum& p, double t,
                               const BasisChoice& basis);

/// Cumulative phase over an increasing grid, built by piecewise quadrature.
/// Owned by one caller; not meant to be shared while being filled.
class PhaseTable {
public:
    PhaseTable(const PulseParams& pulse, const Momentum& p, int j, double t0,
               std::span<const double> grid);

    /// Phase at grid[i].
    double at(std::size_t i) const { return phase_.at(i); }
    std::size_t size() const { return phase_.size(); }

private:
    std::vector<double> phase_;
};

}  // namespace pairgen
