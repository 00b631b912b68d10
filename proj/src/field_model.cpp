#include "pairgen/field_model.hpp"

#include <cmath>
#include <limits>

#include "pairgen/errors.hpp"

namespace pairgen {

PulseParams::PulseParams(double e0, double tau, double charge) : e0_(e0), tau_(tau), charge_(charge) {
    if (!(e0 >= 0.0) || !std::isfinite(e0)) throw ValidationError("PulseParams: e0 must be >= 0");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("PulseParams: tau must be > 0");
    if (std::abs(charge) != 1.0) throw ValidationError("PulseParams: charge must be +1 or -1");
    if (e0 > 0.0) {
        const double s = e0 * tau * tau;
        if (!(s * s > 0.25)) {
            throw ValidationError("PulseParams: (e0 tau^2)^2 <= 1/4, lambda would be imaginary");
        }
    }
}

double electric_field(const PulseParams& pulse, double t) {
    const double sech = 1.0 / std::cosh(t / pulse.tau());
    return pulse.e0() * sech * sech;
}

double vector_potential(const PulseParams& pulse, double t) {
    return -pulse.e0() * pulse.tau() * std::tanh(t / pulse.tau());
}

Kinetic kinetic_momentum(const PulseParams& pulse, double p_par, double t) {
    const double tau = pulse.tau();
    const double th = std::tanh(t / tau);
    const double sech2 = 1.0 - th * th;
    const double ee0 = pulse.charge() * pulse.e0();
    return {p_par - ee0 * tau * th, -ee0 * sech2, 2.0 * ee0 / tau * sech2 * th};
}

double omega(const PulseParams& pulse, const Momentum& p, double t) {
    const double k = kinetic_momentum(pulse, p.p_par, t).value;
    return std::sqrt(p.transverse_energy_sq() + k * k);
}

OmegaDerivs omega_derivatives(const PulseParams& pulse, const Momentum& p, double t) {
    const Kinetic k = kinetic_momentum(pulse, p.p_par, t);
    const double w = std::sqrt(p.transverse_energy_sq() + k.value * k.value);
    const double dw = k.value * k.d1 / w;
    const double d2w = (k.d1 * k.d1 + k.value * k.d2 - dw * dw) / w;
    return {w, dw, d2w};
}

OmegaAsymptotics omega_asymptotics(const PulseParams& pulse, const Momentum& p) {
    const double shift = pulse.charge() * pulse.e0() * pulse.tau();
    const double et2 = p.transverse_energy_sq();
    return {std::sqrt((p.p_par + shift) * (p.p_par + shift) + et2),
            std::sqrt((p.p_par - shift) * (p.p_par - shift) + et2)};
}

YPoint y_point(const PulseParams& pulse, double t) {
    // y = 1/(1 + e^{-2t/tau}), 1 - y = 1/(1 + e^{2t/tau})
    const double x = 2.0 * t / pulse.tau();
    if (x < 0.0) {
        const double e = std::exp(x);
        return {e / (1.0 + e), 1.0 / (1.0 + e)};
    }
    const double e = std::exp(-x);
    return {1.0 / (1.0 + e), e / (1.0 + e)};
}

double y_of_t(const PulseParams& pulse, double t) { return y_point(pulse, t).y; }

double t_of_y(const PulseParams& pulse, const YPoint& yp) {
    // y (or 1 - y) may round to 1 while its complement is still resolved.
    if (!(yp.y > 0.0 && yp.y <= 1.0) || !(yp.one_minus_y > 0.0 && yp.one_minus_y <= 1.0)) {
        throw DomainError("t_of_y: y must lie in (0, 1)");
    }
    return 0.5 * pulse.tau() * (std::log(yp.y) - std::log(yp.one_minus_y));
}

double t_of_y(const PulseParams& pulse, double y) { return t_of_y(pulse, YPoint{y, 1.0 - y}); }

SauterHypParams hyp_params(const PulseParams& pulse, const Momentum& p) {
    const double s = pulse.e0() * pulse.tau() * pulse.tau();
    const double disc = s * s - 0.25;
    if (!(disc > 0.0)) {
        throw DomainError("hyp_params: (e0 tau^2)^2 <= 1/4, lambda is not real");
    }
    const double lambda = std::sqrt(disc);
    const auto [w0, w1] = omega_asymptotics(pulse, p);
    const double tau = pulse.tau();
    const Complex i{0.0, 1.0};
    SauterHypParams hp;
    hp.lambda = lambda;
    hp.omega0 = w0;
    hp.omega1 = w1;
    hp.a = 0.5 + 0.5 * i * (tau * w1 - tau * w0) - i * lambda;
    hp.b = 0.5 + 0.5 * i * (tau * w1 - tau * w0) + i * lambda;
    hp.c = 1.0 - i * tau * w0;
    return hp;
}

double keldysh(const PulseParams& pulse) {
    if (pulse.free_field()) return std::numeric_limits<double>::infinity();
    return 1.0 / (pulse.e0() * pulse.tau());
}

}  // namespace pairgen
