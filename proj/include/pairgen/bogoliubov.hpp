#pragma once

#include <span>
#include <vector>

#include "pairgen/adiabatic_basis.hpp"
#include "pairgen/mode_solver.hpp"

namespace pairgen {

struct BogoliubovPair {
    Complex alpha;
    Complex beta;
    double t = 0.0;

    double norm_defect() const { return std::norm(alpha) - std::norm(beta) - 1.0; }
};

struct DistributionSample {
    double f = 0.0;
    Momentum p;
    double t = 0.0;
    BasisChoice basis;
};

enum class Solver { Exact, Ode };

/// Above this |  |alpha|^2 - |beta|^2 - 1 | the mode and frame are treated as inconsistent.
inline constexpr double kConstraintLimit = 1e-5;

/// Projects the mode onto the reference pair (phi~+, phi~-) of the frame.
/// The phase of the frame enters alpha and beta only as an overall phase.
/// Throws ConstraintViolation when ||alpha|^2 - |beta|^2 - 1| > kConstraintLimit.
BogoliubovPair bogoliubov_coefficients(const ModeState& mode, const AdiabaticFrame& frame);

/// |beta|^2 = |phi_dot + (i Omega - V) phi|^2 / (2 Omega). Phase-free.
double occupation(const ModeState& mode, const AdiabaticFrame& frame);

/// f(p, t) in the given basis from the exact or the ODE mode.
DistributionSample distribution(const PulseParams& pulse, const Momentum& p, double t,
                                const BasisChoice& basis, Solver solver = Solver::Exact);

/// Same quantity assembled in the y variable straight from 2F1 and its
/// derivative; uses the frame's Omega and V at t(y).
double distribution_y_form(const PulseParams& pulse, const Momentum& p, const YPoint& yp,
                           const BasisChoice& basis);

/// f over an increasing time grid. The ODE solver integrates once across the
/// whole grid; the exact solver evaluates per point.
std::vector<DistributionSample> distribution_series(const PulseParams& pulse, const Momentum& p,
                                                    std::span<const double> t_grid,
                                                    const BasisChoice& basis,
                                                    Solver solver = Solver::Ode);

/// Closed-form f as t -> +inf:
/// [cosh(2 pi lambda) + cosh(pi tau (w1 - w0))] / (2 sinh(pi tau w0) sinh(pi tau w1)).
double asymptotic_distribution(const PulseParams& pulse, const Momentum& p);

}  // namespace pairgen
