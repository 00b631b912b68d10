#pragma once

#include "pairgen/special_functions.hpp"

// Sauter pulse E(t) = E0 sech^2(t/tau) in natural units (m = |e| = 1).
// Field strengths are multiples of the critical field, times are in 1/m and
// momenta in m.

namespace pairgen {

class PulseParams {
public:
    /// Throws ValidationError unless e0 >= 0, tau > 0, |charge| = 1 and,
    /// for e0 > 0, (e0 tau^2)^2 > 1/4 so that the hypergeometric lambda is real.
    /// e0 = 0 is accepted as the free-field limit.
    PulseParams(double e0, double tau, double charge = -1.0);

    double e0() const { return e0_; }
    double tau() const { return tau_; }
    double charge() const { return charge_; }
    bool free_field() const { return e0_ == 0.0; }

    bool operator==(const PulseParams&) const = default;

private:
    double e0_;
    double tau_;
    double charge_;
};

struct Momentum {
    double p_par = 0.0;
    double p_perp = 0.0;  // magnitude, >= 0

    /// Transverse energy sqrt(1 + p_perp^2).
    double transverse_energy_sq() const { return 1.0 + p_perp * p_perp; }
};

/// Parameters of the hypergeometric mode solution for one (pulse, p).
struct SauterHypParams {
    Complex a;
    Complex b;
    Complex c;
    double lambda = 0.0;
    double omega0 = 0.0;  // kinetic energy as t -> -inf
    double omega1 = 0.0;  // kinetic energy as t -> +inf

    Hyp2F1Params triple() const { return {a, b, c}; }
};

/// Time variable y = (1 + tanh(t/tau))/2 carried together with 1 - y, both
/// computed without cancellation.
struct YPoint {
    double y;
    double one_minus_y;
};

double electric_field(const PulseParams& pulse, double t);
double vector_potential(const PulseParams& pulse, double t);

/// Kinetic momentum p_par - e E0 tau tanh(t/tau) and its first two time derivatives.
struct Kinetic {
    double value;
    double d1;
    double d2;
};
Kinetic kinetic_momentum(const PulseParams& pulse, double p_par, double t);

double omega(const PulseParams& pulse, const Momentum& p, double t);

/// omega and its first two time derivatives in closed form.
struct OmegaDerivs {
    double w;
    double dw;
    double d2w;
};
OmegaDerivs omega_derivatives(const PulseParams& pulse, const Momentum& p, double t);

struct OmegaAsymptotics {
    double omega0;
    double omega1;
};
OmegaAsymptotics omega_asymptotics(const PulseParams& pulse, const Momentum& p);

double y_of_t(const PulseParams& pulse, double t);
YPoint y_point(const PulseParams& pulse, double t);
/// Inverse of y_of_t; throws DomainError for y outside (0, 1).
double t_of_y(const PulseParams& pulse, double y);
double t_of_y(const PulseParams& pulse, const YPoint& yp);

/// Throws DomainError when (e0 tau^2)^2 <= 1/4 (lambda imaginary), which
/// includes the free field.
SauterHypParams hyp_params(const PulseParams& pulse, const Momentum& p);

/// gamma = 1/(E0 tau) in natural units.
double keldysh(const PulseParams& pulse);

}  // namespace pairgen
