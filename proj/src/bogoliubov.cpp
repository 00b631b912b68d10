#include "pairgen/bogoliubov.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pairgen/errors.hpp"

namespace pairgen {

namespace {

constexpr Complex kI{0.0, 1.0};

// Expressed through X = phi_dot - V phi so both coefficients share it.
struct Projection {
    Complex minus;  // phi_dot - (i Omega + V) phi
    Complex plus;   // phi_dot + (i Omega - V) phi
};

Projection project(const ModeState& mode, const AdiabaticFrame& frame) {
    const Complex x = mode.phi_dot - frame.v_ref * mode.phi;
    const Complex iw = kI * frame.omega_ref * mode.phi;
    return {x - iw, x + iw};
}

AdiabaticFrame frame_at(const PulseParams& pulse, const Momentum& p, double t, const BasisChoice& basis) {
    return adiabatic_frame(pulse, p, t, basis);
}

}  // namespace

BogoliubovPair bogoliubov_coefficients(const ModeState& mode, const AdiabaticFrame& frame) {
    if (!(frame.omega_ref > 0.0)) throw DomainError("bogoliubov_coefficients: Omega must be positive");
    const Projection pr = project(mode, frame);
    const double amp = 1.0 / std::sqrt(2.0 * frame.omega_ref);
    const Complex tilde_plus = std::polar(amp, -frame.phase);
    const Complex tilde_minus = std::conj(tilde_plus);
    BogoliubovPair out;
    out.alpha = kI * tilde_minus * pr.minus;
    // The projection onto phi~- gives beta*.
    out.beta = std::conj(-kI * tilde_plus * pr.plus);
    out.t = mode.t;
    const double defect = std::abs(out.norm_defect());
    if (!(defect <= kConstraintLimit)) {
        throw ConstraintViolation("bogoliubov_coefficients: ||alpha|^2 - |beta|^2 - 1| = " +
                                  std::to_string(defect) + " at t = " + std::to_string(mode.t));
    }
    return out;
}

double occupation(const ModeState& mode, const AdiabaticFrame& frame) {
    return std::norm(project(mode, frame).plus) / (2.0 * frame.omega_ref);
}

DistributionSample distribution(const PulseParams& pulse, const Momentum& p, double t,
                                const BasisChoice& basis, Solver solver) {
    ModeState mode;
    if (solver == Solver::Exact) {
        mode = exact_mode_at_time(pulse, p, t);
    } else {
        const double ts[] = {t};
        mode = ode_oracle(pulse, p, ts).states.front();
    }
    const AdiabaticFrame frame = frame_at(pulse, p, t, basis);
    return {std::max(0.0, occupation(mode, frame)), p, t, basis};
}

double distribution_y_form(const PulseParams& pulse, const Momentum& p, const YPoint& yp,
                           const BasisChoice& basis) {
    const double t = t_of_y(pulse, yp);
    const AdiabaticFrame frame = frame_at(pulse, p, t, basis);
    if (pulse.free_field()) return 0.0;
    const ExactModeParts m = exact_mode_parts(pulse, p, yp);
    const double y = yp.y;
    const double s = yp.one_minus_y;
    const Complex q{-frame.v_ref, frame.omega_ref};  // i Omega - V
    const Complex inner = (2.0 / pulse.tau()) * y * s * m.dg2 +
                          (q - kI * (s * m.hp.omega0 + y * m.hp.omega1)) * m.g2;
    return std::norm(m.prefactor) / (2.0 * frame.omega_ref) * std::norm(inner);
}

std::vector<DistributionSample> distribution_series(const PulseParams& pulse, const Momentum& p,
                                                    std::span<const double> t_grid,
                                                    const BasisChoice& basis, Solver solver) {
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("distribution_series: t_grid must be increasing");
    }
    std::vector<DistributionSample> out;
    out.reserve(t_grid.size());
    if (solver == Solver::Exact) {
        for (double t : t_grid) out.push_back(distribution(pulse, p, t, basis, Solver::Exact));
        return out;
    }
    const OdeResult ode = ode_oracle(pulse, p, t_grid);
    for (const ModeState& mode : ode.states) {
        const AdiabaticFrame frame = frame_at(pulse, p, mode.t, basis);
        out.push_back({std::max(0.0, occupation(mode, frame)), p, mode.t, basis});
    }
    return out;
}

double asymptotic_distribution(const PulseParams& pulse, const Momentum& p) {
    if (pulse.free_field()) return 0.0;
    const SauterHypParams hp = hyp_params(pulse, p);
    constexpr double pi = std::numbers::pi;
    const double tau = pulse.tau();
    const double l1 = log_cosh(2.0 * pi * hp.lambda);
    const double l2 = log_cosh(pi * tau * (hp.omega1 - hp.omega0));
    const double hi = std::max(l1, l2);
    const double log_num = hi + std::log1p(std::exp(std::min(l1, l2) - hi));
    const double log_den = std::numbers::ln2 + log_sinh(pi * tau * hp.omega0) + log_sinh(pi * tau * hp.omega1);
    return std::exp(log_num - log_den);
}

}  // namespace pairgen
