#include "pairgen/mode_solver.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "pairgen/errors.hpp"

namespace pairgen {

namespace {

constexpr Complex kI{0.0, 1.0};

ModeState plane_wave(double w, double t) {
    const Complex phi = std::exp(-kI * w * t) / std::sqrt(2.0 * w);
    return {phi, -kI * w * phi, t};
}

}  // namespace

ExactModeParts exact_mode_parts(const PulseParams& pulse, const Momentum& p, const YPoint& yp) {
    if (!(yp.y > 0.0 && yp.y <= 1.0) || !(yp.one_minus_y > 0.0 && yp.one_minus_y <= 1.0)) {
        throw DomainError("exact_mode: y must lie in (0, 1)");
    }
    ExactModeParts parts;
    parts.hp = hyp_params(pulse, p);
    parts.yp = yp;
    const double tau = pulse.tau();
    const double w0 = parts.hp.omega0;
    const double w1 = parts.hp.omega1;
    // (y - 1)^{i tau w1/2} is taken as (1 - y)^{i tau w1/2}; the dropped
    // constant e^{-pi tau w1/2} is absorbed in the normalisation.
    const double phase = -0.5 * tau * w0 * std::log(yp.y) + 0.5 * tau * w1 * std::log(yp.one_minus_y);
    parts.prefactor = std::polar(1.0 / std::sqrt(2.0 * w0), phase);
    const Hyp2F1Params triple = parts.hp.triple();
    parts.g2 = hyp2f1(triple, yp.y, yp.one_minus_y);
    parts.dg2 = hyp2f1_derivative(triple, yp.y, yp.one_minus_y);
    return parts;
}

ModeState exact_mode(const PulseParams& pulse, const Momentum& p, const YPoint& yp) {
    const double t = t_of_y(pulse, yp);
    if (pulse.free_field()) return plane_wave(omega(pulse, p, t), t);
    const ExactModeParts m = exact_mode_parts(pulse, p, yp);
    const double y = yp.y;
    const double s = yp.one_minus_y;
    const double w0 = m.hp.omega0;
    const double w1 = m.hp.omega1;
    // d/dt = (2/tau) y (1 - y) d/dy
    const Complex bracket = (2.0 / pulse.tau()) * y * s * m.dg2 - kI * (s * w0 + y * w1) * m.g2;
    return {m.prefactor * m.g2, m.prefactor * bracket, t};
}

ModeState exact_mode(const PulseParams& pulse, const Momentum& p, double y) {
    if (!(y > 0.0 && y < 1.0)) throw DomainError("exact_mode: y must lie in (0, 1)");
    return exact_mode(pulse, p, YPoint{y, 1.0 - y});
}

ModeState exact_mode_at_time(const PulseParams& pulse, const Momentum& p, double t) {
    if (pulse.free_field()) return plane_wave(omega(pulse, p, t), t);
    ModeState st = exact_mode(pulse, p, y_point(pulse, t));
    st.t = t;
    return st;
}

double ode_start_time(const PulseParams& pulse, const OdeOptions& options) {
    return options.start_in_tau * pulse.tau();
}

OdeResult ode_oracle(const PulseParams& pulse, const Momentum& p, std::span<const double> samples,
                     const OdeOptions& options) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 4>;

    if (options.start_in_tau > -5.0) {
        throw DomainError("ode_oracle: integration must start at or before -5 tau");
    }
    const double t_start = ode_start_time(pulse, options);
    OdeResult result;
    if (samples.empty()) return result;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i] < t_start) throw DomainError("ode_oracle: sample precedes the start time");
        if (i > 0 && samples[i] < samples[i - 1]) {
            throw DomainError("ode_oracle: samples must be non-decreasing");
        }
    }

    const double w0 = omega(pulse, p, t_start);
    const ModeState init = plane_wave(w0, t_start);
    State x{init.phi.real(), init.phi.imag(), init.phi_dot.real(), init.phi_dot.imag()};

    auto rhs = [&pulse, &p](const State& s, State& dsdt, double t) {
        const double w = omega(pulse, p, t);
        const double w2 = w * w;
        dsdt[0] = s[2];
        dsdt[1] = s[3];
        dsdt[2] = -w2 * s[0];
        dsdt[3] = -w2 * s[1];
    };

    std::vector<double> times;
    times.reserve(samples.size() + 1);
    times.push_back(t_start);
    for (double t : samples) {
        if (t > times.back()) times.push_back(t);
    }

    std::vector<ModeState> at_times;
    at_times.reserve(times.size());
    auto observer = [&at_times](const State& s, double t) {
        at_times.push_back({{s[0], s[1]}, {s[2], s[3]}, t});
    };

    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    try {
        odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), options.initial_step,
                                observer, odeint::max_step_checker(100000));
    } catch (const odeint::step_adjustment_error& e) {
        throw StepUnderflowError(std::string("ode_oracle: step size underflow: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
        throw StepUnderflowError(std::string("ode_oracle: no progress: ") + e.what());
    }

    // Map back onto the requested samples (duplicates and t_start allowed).
    result.states.reserve(samples.size());
    std::size_t k = 0;
    for (double t : samples) {
        while (k + 1 < at_times.size() && at_times[k].t < t) ++k;
        ModeState st = at_times[k];
        st.t = t;
        result.states.push_back(st);
        result.max_wronskian_drift =
            std::max(result.max_wronskian_drift, std::abs(st.wronskian() - kModeWronskian));
    }
    return result;
}

}  // namespace pairgen
