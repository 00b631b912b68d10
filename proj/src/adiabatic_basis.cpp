#include "pairgen/adiabatic_basis.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pairgen/errors.hpp"
#include "pairgen/mode_solver.hpp"

namespace pairgen {

namespace {

constexpr double kQuadTol = 1e-13;
constexpr unsigned kQuadDepth = 15;

double checked_sqrt(double sq, double t, int j) {
    if (!(sq > 0.0)) {
        throw ImaginaryFrequencyError("adiabatic_frequency: (Omega^(" + std::to_string(j) +
                                      "))^2 = " + std::to_string(sq) + " at t = " + std::to_string(t));
    }
    return std::sqrt(sq);
}

double omega1_value(const PulseParams& pulse, const Momentum& p, double t) {
    const OmegaDerivs d = omega_derivatives(pulse, p, t);
    const double r = d.dw / d.w;
    return checked_sqrt(d.w * d.w - (d.d2w / (2.0 * d.w) - 0.75 * r * r), t, 1);
}

// Richardson-extrapolated central differences (first and second derivative).
template <class F>
void richardson_derivs(F&& f, double t, double h, double& d1, double& d2) {
    const double f0 = f(t);
    auto diff = [&](double step, double& a, double& b) {
        const double fp = f(t + step);
        const double fm = f(t - step);
        a = (fp - fm) / (2.0 * step);
        b = (fp - 2.0 * f0 + fm) / (step * step);
    };
    double a1, b1, a2, b2;
    diff(h, a1, b1);
    diff(0.5 * h, a2, b2);
    d1 = (4.0 * a2 - a1) / 3.0;
    d2 = (4.0 * b2 - b1) / 3.0;
}

double derivative_step(const PulseParams& pulse) { return 1e-2 * pulse.tau(); }

double integrate_omega(const PulseParams& pulse, const Momentum& p, int j, double a, double b) {
    if (a == b) return 0.0;
    auto f = [&](double t) { return adiabatic_frequency(pulse, p, t, j); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kQuadDepth, kQuadTol);
}

}  // namespace

std::string basis_name(const BasisChoice& basis) {
    if (basis == BasisChoice::choice1()) return "choice1";
    if (basis == BasisChoice::choice2()) return "choice2";
    const std::string v = basis.v_variant == VVariant::Zero ? "zero" : "natural";
    return v + "-j" + std::to_string(basis.omega_order);
}

BasisChoice parse_basis(const std::string& name) {
    if (name == "choice1") return BasisChoice::choice1();
    if (name == "choice2") return BasisChoice::choice2();
    for (const auto& [prefix, variant] : {std::pair{"zero-j", VVariant::Zero},
                                          std::pair{"natural-j", VVariant::NaturalChoice}}) {
        const std::string pre = prefix;
        if (name.rfind(pre, 0) == 0 && name.size() == pre.size() + 1) {
            const int j = name.back() - '0';
            if (j >= 0 && j <= 2) return {variant, j};
        }
    }
    throw ValidationError("unknown basis '" + name + "' (expected choice1, choice2, zero-jN, natural-jN)");
}

double adiabatic_frequency(const PulseParams& pulse, const Momentum& p, double t, int j) {
    switch (j) {
        case 0:
            return omega(pulse, p, t);
        case 1:
            return omega1_value(pulse, p, t);
        case 2: {
            double d1, d2;
            richardson_derivs([&](double s) { return omega1_value(pulse, p, s); }, t,
                              derivative_step(pulse), d1, d2);
            const double w = omega(pulse, p, t);
            const double o1 = omega1_value(pulse, p, t);
            const double r = d1 / o1;
            return checked_sqrt(w * w - (d2 / (2.0 * o1) - 0.75 * r * r), t, 2);
        }
        default:
            throw DomainError("adiabatic_frequency: order j must be 0, 1 or 2");
    }
}

double adiabatic_frequency_rate(const PulseParams& pulse, const Momentum& p, double t, int j) {
    if (j == 0) return omega_derivatives(pulse, p, t).dw;
    double d1, d2;
    richardson_derivs([&](double s) { return adiabatic_frequency(pulse, p, s, j); }, t,
                      derivative_step(pulse), d1, d2);
    return d1;
}

double v_function(const PulseParams& pulse, const Momentum& p, double t, const BasisChoice& basis) {
    if (basis.v_variant == VVariant::Zero) return 0.0;
    const int j = basis.omega_order;
    return -adiabatic_frequency_rate(pulse, p, t, j) / (2.0 * adiabatic_frequency(pulse, p, t, j));
}

double adiabaticity(const PulseParams& pulse, const Momentum& p, double t) {
    const OmegaDerivs d = omega_derivatives(pulse, p, t);
    return std::abs(d.dw) / (d.w * d.w);
}

double wkb_phase(const PulseParams& pulse, const Momentum& p, double t, int j, double t0) {
    if (pulse.free_field()) return omega(pulse, p, t) * (t - t0);
    return integrate_omega(pulse, p, j, t0, t);
}

Complex wkb_mode(const PulseParams& pulse, const Momentum& p, double t, int j, double t0) {
    const double w = adiabatic_frequency(pulse, p, t, j);
    return std::polar(1.0 / std::sqrt(2.0 * w), -wkb_phase(pulse, p, t, j, t0));
}

double default_phase_origin(const PulseParams& pulse) { return ode_start_time(pulse); }

AdiabaticFrame adiabatic_frame(const PulseParams& pulse, const Momentum& p, double t,
                               const BasisChoice& basis) {
    return {adiabatic_frequency(pulse, p, t, basis.omega_order), v_function(pulse, p, t, basis), 0.0, t};
}

AdiabaticFrame adiabatic_frame(const PulseParams& pulse, const Momentum& p, double t,
                               const BasisChoice& basis, double t0) {
    AdiabaticFrame frame = adiabatic_frame(pulse, p, t, basis);
    frame.phase = wkb_phase(pulse, p, t, basis.omega_order, t0);
    return frame;
}

PhaseTable::PhaseTable(const PulseParams& pulse, const Momentum& p, int j, double t0,
                       std::span<const double> grid) {
    phase_.reserve(grid.size());
    double acc = 0.0;
    double prev = t0;
    for (double t : grid) {
        if (t < prev && !phase_.empty()) throw DomainError("PhaseTable: grid must be increasing");
        acc += pulse.free_field() ? omega(pulse, p, t) * (t - prev) : integrate_omega(pulse, p, j, prev, t);
        phase_.push_back(acc);
        prev = t;
    }
}

}  // namespace pairgen
