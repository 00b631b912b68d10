#pragma once

#include <span>
#include <vector>

#include "pairgen/field_model.hpp"

namespace pairgen {

/// Positive-frequency mode function and its time derivative at time t.
struct ModeState {
    Complex phi;
    Complex phi_dot;
    double t = 0.0;

    /// conj(phi_dot) phi - conj(phi) phi_dot. With the e^{-i w t}/sqrt(2w)
    /// normalisation this is +i at all times.
    Complex wronskian() const { return std::conj(phi_dot) * phi - std::conj(phi) * phi_dot; }
};

/// Value the wronskian() of a correctly normalised mode must take.
inline const Complex kModeWronskian{0.0, 1.0};

/// Building blocks of the hypergeometric mode at one y:
///   phi = prefactor * g2,
///   dphi/dy = prefactor * (dg2 - i(tau w0/2)/y g2 - i(tau w1/2)/(1-y) g2)
/// with prefactor = y^{-i tau w0/2} (1-y)^{i tau w1/2} / sqrt(2 w0).
struct ExactModeParts {
    SauterHypParams hp;
    YPoint yp;
    Complex prefactor;
    Complex g2;   // 2F1(a, b; c; y)
    Complex dg2;  // d/dy 2F1(a, b; c; y) = (ab/c) 2F1(a+1, b+1; c+1; y)
};

ExactModeParts exact_mode_parts(const PulseParams& pulse, const Momentum& p, const YPoint& yp);

/// Exact mode in the Sauter field. The constant in front is fixed so that the
/// state approaches e^{-i w0 t}/sqrt(2 w0) as y -> 0. For the free field the
/// plane wave is returned directly. Throws DomainError for y outside (0, 1).
ModeState exact_mode(const PulseParams& pulse, const Momentum& p, double y);
ModeState exact_mode(const PulseParams& pulse, const Momentum& p, const YPoint& yp);
/// Same, parametrised by time (keeps full precision in 1 - y at late times).
ModeState exact_mode_at_time(const PulseParams& pulse, const Momentum& p, double t);

struct OdeOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    // Start of integration in units of tau. Must be <= -5.
    double start_in_tau = -12.0;
    double initial_step = 1e-3;
};

struct OdeResult {
    std::vector<ModeState> states;  // one per requested sample
    double max_wronskian_drift = 0.0;
};

/// Integrates phi'' + w(t)^2 phi = 0 on the real 4-vector
/// (Re phi, Im phi, Re phi', Im phi') from the plane wave
/// e^{-i w0 t_start}/sqrt(2 w0) and returns the state at each sample.
/// Samples must be non-decreasing and >= the start time.
OdeResult ode_oracle(const PulseParams& pulse, const Momentum& p, std::span<const double> samples,
                     const OdeOptions& options = {});

double ode_start_time(const PulseParams& pulse, const OdeOptions& options = {});

}  // namespace pairgen
