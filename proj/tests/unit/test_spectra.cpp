#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "pairgen/errors.hpp"
#include "pairgen/parallel.hpp"
#include "pairgen/spectra.hpp"

using namespace pairgen;

namespace {

SpectrumRecord make_record(const std::vector<double>& p, const std::vector<double>& f, double t = 0.0) {
    SpectrumRecord r;
    r.p_grid = p;
    r.f_values = f;
    r.t = t;
    r.pulse = PulseParams(0.2, 10.0);
    return r;
}

double gauss(double x, double s) { return std::exp(-x * x / (2.0 * s * s)); }

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("uniform grid") {
    const auto g = uniform_grid(-4.0, 4.0, 0.01);
    CHECK(g.size() == 801);
    CHECK(g.front() == -4.0);
    CHECK(g.back() == doctest::Approx(4.0));
    CHECK(g[400] == doctest::Approx(0.0));
    CHECK(uniform_grid(0.0, 1.0, 0.3).size() == 4);
}

TEST_CASE("local maxima") {
    std::vector<double> v(101);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / 25.0);
    // Peaks at 0, 25, 50, 75, 100; the end points are excluded.
    CHECK(local_maxima(v, 5) == std::vector<std::size_t>{25, 50, 75});
    CHECK(local_maxima(v, 13) == std::vector<std::size_t>{25, 50, 75});
    CHECK(local_maxima(v, 60).empty());
    std::vector<double> flat(20, 1.0);
    CHECK(local_maxima(flat, 2).empty());
}

TEST_CASE("record validation") {
    CHECK_THROWS_AS(make_record({0.0, 1.0}, {1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(make_record({0.0}, {1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(make_record({1.0, 0.0}, {1.0, 2.0}).validate(), ValidationError);
    CHECK_NOTHROW(make_record({0.0, 1.0}, {1.0, 2.0}).validate());
}

TEST_CASE("normalisation and distances") {
    const auto p = uniform_grid(0.0, 1.0, 0.01);
    std::vector<double> a(p.size(), 1.0), b(p.size(), 0.0), c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = 2.0 + p[i];
    const SpectrumRecord ra = make_record(p, a), rb = make_record(p, b), rc = make_record(p, c);
    CHECK(l2_distance(ra, ra) == 0.0);
    CHECK(l2_distance(ra, rb) == doctest::Approx(std::sqrt(0.01 * 101.0)));
    const SpectrumRecord n = normalized_spectrum(rc);
    CHECK(n.f_values.back() == 1.0);
    CHECK(n.f_values.front() == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(normalized_spectrum(rb), DetectionError);
    CHECK(max_relative_difference(ra, rc) == doctest::Approx(2.0 / 3.0));
    CHECK(max_relative_difference(rb, rb) == 0.0);
}

TEST_CASE("sweep is independent of the worker count") {
    const PulseParams pulse(0.2, 10.0);
    const auto grid = uniform_grid(-2.0, 2.0, 0.05);
    set_thread_count(1);
    const SpectrumRecord one = lms_sweep(pulse, 20.0, BasisChoice::choice1(), grid);
    set_thread_count(4);
    const SpectrumRecord four = lms_sweep(pulse, 20.0, BasisChoice::choice1(), grid);
    set_thread_count(0);
    CHECK(one.missing == 0);
    CHECK(one.f_values == four.f_values);
    for (std::size_t i = 0; i < grid.size(); i += 10) {
        CHECK(one.f_values[i] == distribution(pulse, {grid[i], 0.0}, 20.0, BasisChoice::choice1()).f);
    }
}

TEST_CASE("sweep records failures as NaN") {
    // Omega^(1) is imaginary near p = 0 at the peak of a short strong pulse.
    const PulseParams pulse(5.0, 1.0);
    const auto grid = uniform_grid(-0.5, 0.5, 0.1);
    const SpectrumRecord r = lms_sweep(pulse, 0.0, BasisChoice{VVariant::Zero, 1}, grid);
    CHECK(r.missing > 0);
    CHECK(std::isnan(r.f_values[5]));
}

TEST_CASE("parallel_for rethrows") {
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw DomainError("boom");
                    }),
                    DomainError);
}

TEST_CASE("transient bounds of a damped oscillation") {
    std::vector<DistributionSample> s;
    for (double t = 0.0; t <= 100.0; t += 0.1) {
        DistributionSample d;
        d.t = t;
        d.f = 1.0 + 3.0 * std::exp(-t / 3.0) * std::cos(t);
        s.push_back(d);
    }
    const TransientBounds b = detect_transient_bounds(s);
    CHECK(b.f_const == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.t_in == doctest::Approx(std::numbers::pi / 2).epsilon(0.05));
    // Moving average over 5 time units falls inside the 10% band once 3 e^{-t/3} |sinc| is small.
    CHECK(b.t_out > b.t_in);
    CHECK(b.t_out < 10.0);

    std::vector<DistributionSample> noisy = s;
    for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i].f = (i % 2 == 0) ? 0.5 : 1.5;
    CHECK_THROWS_AS(detect_transient_bounds(noisy), DetectionError);
    std::vector<DistributionSample> short_series(s.begin(), s.begin() + 5);
    CHECK_THROWS_AS(detect_transient_bounds(short_series), DetectionError);
}

TEST_CASE("stage detection on synthetic spectra") {
    const PulseParams pulse(0.2, 10.0);
    const auto p = uniform_grid(-2.0, 2.0, 0.01);
    std::vector<SpectrumRecord> records;
    for (int t = 0; t <= 8; ++t) {
        std::vector<double> f(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double side = gauss(p[i] - 1.5, 0.3);
            if (t < 2) {
                f[i] = side;
            } else if (t == 2) {
                f[i] = side + 0.5 * gauss(p[i], 0.1);
            } else {
                const double r = t < 5 ? 0.5 : 0.01;
                f[i] = asymptotic_distribution(pulse, {p[i], 0.0}) * (1.0 + r * std::cos(40.0 * p[i]));
            }
        }
        records.push_back(make_record(p, f, t));
    }
    CHECK(side_contrast(records[3]) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(side_contrast(records[6]) == doctest::Approx(0.01).epsilon(1e-2));
    const StageTimes st = detect_peak_stages(records);
    REQUIRE(st.t_cp);
    REQUIRE(st.t_dom);
    REQUIRE(st.t_dis);
    CHECK(*st.t_cp == 2.0);
    CHECK(*st.t_dom == 3.0);
    CHECK(*st.t_dis == 5.0);

    // A central peak that vanishes again only counts from its last onset.
    records[4].f_values = records[0].f_values;
    const StageTimes late = detect_peak_stages(records);
    CHECK(*late.t_cp == 5.0);
    StageOptions first;
    first.require_persistence = false;
    CHECK(*detect_peak_stages(records, first).t_cp == 2.0);

    std::vector<SpectrumRecord> none(records.begin(), records.begin() + 2);
    const StageTimes empty = detect_peak_stages(none);
    CHECK_FALSE(empty.t_cp);
    CHECK_FALSE(empty.t_dom);
    CHECK_FALSE(empty.t_dis);

    std::swap(records[0], records[1]);
    CHECK_THROWS_AS(detect_peak_stages(records), ValidationError);
}

}
