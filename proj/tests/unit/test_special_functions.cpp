#include <doctest.h>

#include <numbers>
#include <random>

#include "pairgen/errors.hpp"
#include "pairgen/special_functions.hpp"
#include "support.hpp"

using namespace pairgen;
using testing::rel_err;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("special_functions") {

TEST_CASE("gamma at integers and known complex points") {
    CHECK(rel_err(gamma_complex(1.0), Complex(1.0)) < 1e-15);
    CHECK(rel_err(gamma_complex(5.0), Complex(24.0)) < 1e-14);
    CHECK(rel_err(std::norm(gamma_complex({1.0, 1.0})), 0.27202905498213316) < 1e-13);
    // mpmath, 40 digits
    CHECK(rel_err(gamma_complex({0.5, 2.0}), Complex(0.08985517670643164, -0.06049376029288757)) < 1e-12);
    CHECK(rel_err(gamma_complex({-2.5, 0.3}), Complex(-0.6138229974377415, -0.21123261493704178)) < 1e-12);
}

TEST_CASE("gamma poles and overflow") {
    CHECK_THROWS_AS(gamma_complex(0.0), PoleError);
    CHECK_THROWS_AS(gamma_complex(-3.0), PoleError);
    CHECK_THROWS_AS(gamma_complex(200.0), OverflowError);
    CHECK(std::isfinite(log_gamma_complex(200.0).real()));
}

TEST_CASE("log gamma") {
    CHECK(std::abs(log_gamma_complex(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma_complex(2.0)) < 1e-15);
    CHECK(log_gamma_complex({0.0, 3.0}).real() == doctest::Approx(-4.342756588257866).epsilon(1e-13));
    const Complex lg = log_gamma_complex({10.0, 20.0});
    CHECK(lg.real() == doctest::Approx(-1.702980443956511).epsilon(1e-13));
    CHECK(lg.imag() == doctest::Approx(52.66066042558472).epsilon(1e-13));
    // Large-argument form of Re log Gamma(i x).
    const double x = 3.0;
    CHECK(log_gamma_complex({0.0, x}).real() ==
          doctest::Approx(-0.5 * kPi * x - 0.5 * std::log(x) + 0.5 * std::log(2.0 * kPi)).epsilon(2e-3));
}

TEST_CASE("recurrence and reflection on random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    int n = 0;
    while (n < 1000) {
        const Complex z{u(rng), u(rng)};
        if (std::abs(z) >= 10.0) continue;
        if (z.real() < 1.0 && std::abs(z - std::round(z.real())) < 0.05) continue;
        ++n;
        const Complex g = gamma_complex(z);
        REQUIRE(rel_err(z * g, gamma_complex(z + 1.0)) < 1e-10);
        REQUIRE(rel_err(gamma_complex(1.0 - z) * g, kPi / std::sin(kPi * z)) < 1e-9);
    }
}

TEST_CASE("magnitude identities on the imaginary axis") {
    for (double x = 0.25; x <= 30.0; x += 0.25) {
        const double sh = std::sinh(kPi * x);
        REQUIRE(rel_err(std::norm(gamma_complex({0.0, x})), kPi / (x * sh)) < 1e-9);
        REQUIRE(rel_err(std::norm(gamma_complex({1.0, x})), kPi * x / sh) < 1e-9);
        REQUIRE(rel_err(std::norm(gamma_complex({0.5, x})), kPi / std::cosh(kPi * x)) < 1e-9);
    }
}

TEST_CASE("hyp2f1 closed forms") {
    CHECK(hyp2f1({{0.3, 1.0}, {2.0, -4.0}, {1.5, 3.0}}, 0.0) == Complex(1.0));
    CHECK(rel_err(hyp2f1({1.0, 1.0, 2.0}, 0.5), Complex(2.0 * std::log(2.0))) < 1e-14);
    CHECK(rel_err(hyp2f1({0.5, 3.0, 3.0}, 0.5), Complex(std::sqrt(2.0))) < 1e-14);
    // -ln(1 - z)/z close to z = 1, where the connection formula is required.
    const double z = 1.0 - 1e-6;
    const Hyp2F1Params p{1.0 + 1e-3, 1.0, 2.0};
    CHECK(std::abs(hyp2f1(p, z)) > 10.0);
}

TEST_CASE("hyp2f1 against mpmath") {
    const Hyp2F1Params p{{0.3, 1.2}, {-0.7, 0.4}, {1.5, -0.8}};
    CHECK(rel_err(hyp2f1(p, {0.4, 0.3}), Complex(1.1054285487148099, -0.24976767667526736)) < 1e-13);
    CHECK(rel_err(hyp2f1(p, 0.97), Complex(0.9337437482014649, -0.49401736251003668)) < 1e-12);
    CHECK(rel_err(hyp2f1_near_one(p, 0.03), Complex(0.9337437482014649, -0.49401736251003668)) < 1e-12);
}

TEST_CASE("connection formula agrees with the direct series") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-1.0, 1.0), im(-2.0, 2.0), rc(0.5, 2.0), zz(0.5, 0.95);
    for (int k = 0; k < 200;) {
        const Hyp2F1Params p{{re(rng), im(rng)}, {re(rng), im(rng)}, {rc(rng), im(rng)}};
        const Complex d = p.c - p.a - p.b;
        if (std::abs(d.imag()) < 0.1 && std::abs(d.real() - std::round(d.real())) < 0.1) continue;
        ++k;
        const double z = zz(rng);
        REQUIRE(rel_err(hyp2f1_near_one(p, 1.0 - z), hyp2f1_series(p, z)) < 1e-8);
    }
}

TEST_CASE("hyp2f1 domain and degenerate parameter errors") {
    CHECK_THROWS_AS(hyp2f1_series({1.0, 1.0, 2.0}, 1.2), DomainError);
    CHECK_THROWS_AS(hyp2f1_near_one({1.0, 1.0, 2.0}, 0.3), DegenerateParameterError);
    CHECK_THROWS_AS(hyp2f1_near_one({0.5, 0.2, 1.3}, 1.5), DomainError);
    // Integral c - a - b inside the unit disk still works through the series.
    CHECK(rel_err(hyp2f1({1.0, 1.0, 2.0}, 0.7), Complex(-std::log(0.3) / 0.7)) < 1e-13);
}

TEST_CASE("hyp2f1 derivative") {
    const Hyp2F1Params p{{0.3, 1.2}, {-0.7, 0.4}, {1.5, -0.8}};
    CHECK(rel_err(hyp2f1_derivative(p, 0.0), p.a * p.b / p.c) < 1e-15);
    CHECK(rel_err(hyp2f1_derivative({1.0, 1.0, 2.0}, 0.5), Complex(1.2274112777602188)) < 1e-13);
    CHECK(rel_err(hyp2f1_derivative({0.5, 3.0, 3.0}, 0.5), Complex(0.5 * std::pow(0.5, -1.5))) < 1e-13);
    const double h = 1e-5;
    for (const Complex z : {Complex(0.2, 0.1), Complex(-0.4, 0.3), Complex(0.6, -0.2)}) {
        const Complex fd = (hyp2f1(p, z + h) - hyp2f1(p, z - h)) / (2.0 * h);
        CHECK(rel_err(fd, hyp2f1_derivative(p, z)) < 1e-6);
    }
}

TEST_CASE("log cosh and log sinh") {
    CHECK(log_cosh(0.0) == 0.0);
    CHECK(log_cosh(1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-15));
    CHECK(log_cosh(800.0) == doctest::Approx(800.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(log_sinh(2.0) == doctest::Approx(std::log(std::sinh(2.0))).epsilon(1e-15));
    CHECK(log_sinh(1e-3) == doctest::Approx(std::log(std::sinh(1e-3))).epsilon(1e-14));
    CHECK(log_sinh(900.0) == doctest::Approx(900.0 - std::log(2.0)).epsilon(1e-15));
}

}
