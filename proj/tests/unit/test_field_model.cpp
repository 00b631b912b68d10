#include <doctest.h>

#include <random>

#include "pairgen/errors.hpp"
#include "pairgen/field_model.hpp"
#include "support.hpp"

using namespace pairgen;
using testing::rel_err;

TEST_SUITE("field_model") {

TEST_CASE("pulse validation") {
    CHECK_NOTHROW(PulseParams(0.2, 10.0));
    CHECK_NOTHROW(PulseParams(0.0, 10.0));
    CHECK_THROWS_AS(PulseParams(-0.1, 10.0), ValidationError);
    CHECK_THROWS_AS(PulseParams(0.2, 0.0), ValidationError);
    CHECK_THROWS_AS(PulseParams(0.2, 10.0, 0.5), ValidationError);
    // (e0 tau^2)^2 = 0.01 < 1/4
    CHECK_THROWS_AS(PulseParams(0.001, 10.0), ValidationError);
}

TEST_CASE("field and potential") {
    const PulseParams pulse(0.2, 10.0);
    CHECK(electric_field(pulse, 0.0) == doctest::Approx(0.2));
    CHECK(electric_field(pulse, 10.0) == doctest::Approx(0.08399486832280524).epsilon(1e-14));
    CHECK(electric_field(pulse, 500.0) < 1e-40);
    CHECK(electric_field(pulse, -7.0) == electric_field(pulse, 7.0));
    CHECK(vector_potential(pulse, 0.0) == 0.0);
    CHECK(vector_potential(pulse, 1e3) == doctest::Approx(-2.0));
    CHECK(vector_potential(pulse, -1e3) == doctest::Approx(2.0));
    for (double t = -50.0; t <= 50.0; t += 2.5) {
        const double h = 1e-4;
        const double d = -(vector_potential(pulse, t + h) - vector_potential(pulse, t - h)) / (2.0 * h);
        REQUIRE(rel_err(d, electric_field(pulse, t)) < 1e-8);
    }
}

TEST_CASE("kinetic energy") {
    const PulseParams pulse(0.2, 10.0);
    CHECK(omega(pulse, {0.0, 0.0}, 0.0) == doctest::Approx(1.0));
    CHECK(omega(pulse, {0.0, 0.0}, -1e3) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(omega(pulse, {0.0, 1.0}, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0), t(-40.0, 40.0), q(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Momentum p{u(rng), q(rng)};
        const double tt = t(rng);
        const double w = omega(pulse, p, tt);
        const double kin = p.p_par - pulse.charge() * pulse.e0() * pulse.tau() * std::tanh(tt / pulse.tau());
        REQUIRE(std::abs(w * w - kin * kin - p.p_perp * p.p_perp - 1.0) < 1e-12);
        REQUIRE(kinetic_momentum(pulse, p.p_par, tt).value == doctest::Approx(kin));
    }
}

TEST_CASE("omega derivatives match finite differences") {
    const PulseParams pulse(0.3, 10.0);
    const Momentum p{0.7, 0.4};
    for (double t = -30.0; t <= 30.0; t += 3.0) {
        const double h = 1e-3;
        const OmegaDerivs d = omega_derivatives(pulse, p, t);
        const double fp = omega(pulse, p, t + h), fm = omega(pulse, p, t - h), f0 = omega(pulse, p, t);
        REQUIRE(d.w == doctest::Approx(f0));
        REQUIRE(std::abs(d.dw - (fp - fm) / (2 * h)) < 1e-8);
        REQUIRE(std::abs(d.d2w - (fp - 2 * f0 + fm) / (h * h)) < 1e-5);
    }
}

TEST_CASE("asymptotic energies") {
    const PulseParams pulse(0.2, 10.0);
    const auto a = omega_asymptotics(pulse, {0.0, 0.0});
    CHECK(a.omega0 == doctest::Approx(std::sqrt(5.0)));
    CHECK(a.omega1 == doctest::Approx(std::sqrt(5.0)));
    for (double pp : {-2.0, -0.3, 0.5, 2.0}) {
        CHECK(omega_asymptotics(pulse, {pp, 0.0}).omega0 == doctest::Approx(omega_asymptotics(pulse, {-pp, 0.0}).omega1));
    }
    const auto f = omega_asymptotics(PulseParams(0.0, 10.0), {1.0, 1.0});
    CHECK(f.omega0 == doctest::Approx(std::sqrt(3.0)));
    CHECK(f.omega1 == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("y substitution") {
    const PulseParams pulse(0.2, 10.0);
    CHECK(y_of_t(pulse, 0.0) == 0.5);
    CHECK(y_of_t(pulse, 10.0) == doctest::Approx(0.8807970779778823).epsilon(1e-15));
    CHECK(t_of_y(pulse, 0.5) == 0.0);
    for (double y = 0.01; y < 1.0; y += 0.01) REQUIRE(std::abs(y_of_t(pulse, t_of_y(pulse, y)) - y) < 1e-12);
    CHECK_THROWS_AS(t_of_y(pulse, 1.5), DomainError);
    CHECK_THROWS_AS(t_of_y(pulse, 0.0), DomainError);
    // 1 - y stays resolved where y itself rounds to 1.
    const YPoint late = y_point(pulse, 300.0);
    CHECK(late.one_minus_y == doctest::Approx(std::exp(-60.0)).epsilon(1e-12));
    CHECK(t_of_y(pulse, late) == doctest::Approx(300.0).epsilon(1e-12));
}

TEST_CASE("hypergeometric parameters") {
    const PulseParams pulse(0.2, 10.0);
    const SauterHypParams hp = hyp_params(pulse, {0.0, 0.0});
    CHECK(hp.lambda == doctest::Approx(19.993749023132205).epsilon(1e-14));
    CHECK(hp.c.real() == doctest::Approx(1.0));
    CHECK(hp.c.imag() == doctest::Approx(-22.360679774997898).epsilon(1e-14));
    CHECK(std::abs(hp.a - Complex(0.5, -hp.lambda)) < 1e-12);
    CHECK(std::abs(hp.b - Complex(0.5, hp.lambda)) < 1e-12);
    for (double pp : {-1.5, 0.3, 2.0}) {
        const SauterHypParams q = hyp_params(pulse, {pp, 0.2});
        CHECK(std::abs(q.a + q.b - Complex(1.0, pulse.tau() * (q.omega1 - q.omega0))) < 1e-12);
        CHECK(std::abs(q.c - Complex(1.0, -pulse.tau() * q.omega0)) < 1e-12);
        CHECK(q.omega0 >= 1.0);
        CHECK(q.omega1 >= 1.0);
    }
    CHECK_THROWS_AS(hyp_params(PulseParams(0.0, 10.0), {0.0, 0.0}), DomainError);
}

TEST_CASE("keldysh parameter") {
    CHECK(keldysh(PulseParams(0.2, 10.0)) == doctest::Approx(0.5));
    CHECK(keldysh(PulseParams(0.1, 5.0)) == 2.0);
    CHECK(keldysh(PulseParams(1.0, 1.0)) == 1.0);
}

}
