#include <doctest.h>

#include <vector>

#include "pairgen/errors.hpp"
#include "pairgen/mode_solver.hpp"
#include "support.hpp"

using namespace pairgen;
using testing::rel_err;

TEST_SUITE("mode_solver") {

TEST_CASE("exact mode against mpmath") {
    const PulseParams pulse(0.2, 10.0);
    struct Row {
        double p, t;
        Complex phi;
    };
    const Row rows[] = {
        {0.0, 0.0, {-0.0802899975822929, -0.706724017243936}},
        {0.5, 10.0, {-0.308106045133241, -0.355975245262086}},
        {-1.0, 25.0, {0.350754737769175, 0.485086519767836}},
    };
    for (const Row& r : rows) {
        const ModeState m = exact_mode_at_time(pulse, {r.p, 0.0}, r.t);
        CHECK(rel_err(m.phi, r.phi) < 1e-10);
        CHECK(std::abs(m.wronskian() - kModeWronskian) < 1e-12);
    }
    const ModeState m = exact_mode_at_time(PulseParams(0.1, 5.0), {0.3, 0.0}, 5.0);
    CHECK(rel_err(m.phi, Complex(0.474110344514135, 0.433751255319491)) < 1e-10);
}

TEST_CASE("exact mode approaches the incoming plane wave") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{0.4, 0.3};
    const double w0 = omega_asymptotics(pulse, p).omega0;
    const ModeState m = exact_mode_at_time(pulse, p, -150.0);
    CHECK(std::abs(std::abs(m.phi) - 1.0 / std::sqrt(2.0 * w0)) < 1e-10);
    CHECK(std::abs(m.phi_dot + Complex(0.0, w0) * m.phi) < 1e-9);
}

TEST_CASE("y and t parametrisations agree") {
    const PulseParams pulse(0.3, 10.0);
    const Momentum p{-0.8, 0.0};
    for (double t : {-20.0, -3.0, 0.0, 7.0, 30.0}) {
        const ModeState a = exact_mode_at_time(pulse, p, t);
        const ModeState b = exact_mode(pulse, p, y_of_t(pulse, t));
        CHECK(rel_err(a.phi, b.phi) < 1e-9);
        CHECK(rel_err(a.phi_dot, b.phi_dot) < 1e-9);
    }
    CHECK_THROWS_AS(exact_mode(pulse, p, 0.0), DomainError);
    CHECK_THROWS_AS(exact_mode(pulse, p, 1.2), DomainError);
}

TEST_CASE("exact mode satisfies the mode equation") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{0.7, 0.2};
    const double h = 1e-3;
    for (double t = -25.0; t <= 40.0; t += 5.0) {
        const Complex fm = exact_mode_at_time(pulse, p, t - h).phi;
        const Complex f0 = exact_mode_at_time(pulse, p, t).phi;
        const Complex fp = exact_mode_at_time(pulse, p, t + h).phi;
        const double w = omega(pulse, p, t);
        const Complex residual = (fp - 2.0 * f0 + fm) / (h * h) + w * w * f0;
        REQUIRE(std::abs(residual) < 1e-5 * w * w * std::abs(f0));
    }
}

TEST_CASE("ODE oracle matches the exact mode") {
    const PulseParams pulse(0.2, 10.0);
    const Momentum p{1.5, 0.0};
    std::vector<double> samples;
    for (double t = -30.0; t <= 50.0; t += 10.0) samples.push_back(t);
    const OdeResult res = ode_oracle(pulse, p, samples);
    REQUIRE(res.states.size() == samples.size());
    CHECK(res.max_wronskian_drift < 1e-9);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const ModeState ex = exact_mode_at_time(pulse, p, samples[i]);
        CHECK(rel_err(res.states[i].phi, ex.phi) < 1e-7);
        CHECK(rel_err(res.states[i].phi_dot, ex.phi_dot) < 1e-7);
        CHECK(res.states[i].t == samples[i]);
    }
}

TEST_CASE("free field gives a plane wave") {
    const PulseParams pulse(0.0, 10.0);
    const Momentum p{1.0, 0.5};
    const double w = std::sqrt(1.0 + 1.0 + 0.25);
    for (double t : {-12.0, 0.0, 33.0}) {
        const ModeState m = exact_mode_at_time(pulse, p, t);
        const Complex expected = std::exp(Complex(0.0, -w * t)) / std::sqrt(2.0 * w);
        CHECK(std::abs(m.phi - expected) < 1e-14);
        CHECK(std::abs(m.phi_dot - Complex(0.0, -w) * expected) < 1e-14);
    }
    const double s[] = {0.0, 20.0};
    const OdeResult r = ode_oracle(pulse, p, s);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(r.states[i].phi - std::exp(Complex(0.0, -w * s[i])) / std::sqrt(2.0 * w)) < 1e-9);
    }
}

TEST_CASE("ODE sample validation") {
    const PulseParams pulse(0.2, 10.0);
    const double before[] = {-200.0};
    CHECK_THROWS_AS(ode_oracle(pulse, {}, before), DomainError);
    const double unordered[] = {5.0, 1.0};
    CHECK_THROWS_AS(ode_oracle(pulse, {}, unordered), DomainError);
    OdeOptions late;
    late.start_in_tau = -2.0;
    const double ok[] = {0.0};
    CHECK_THROWS_AS(ode_oracle(pulse, {}, ok, late), DomainError);
    CHECK(ode_start_time(pulse) == -120.0);
}

}
