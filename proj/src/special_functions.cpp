#include "pairgen/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pairgen/errors.hpp"

namespace pairgen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogMax = 709.0;

// B_2k / (2k (2k-1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,           -1.0 / 360.0,        1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0,   1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0,   -174611.0 / 125400.0};

// |z| above which the asymptotic series is used without shifting.
constexpr double kStirlingRadius = 17.0;

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

Complex log_gamma_stirling(Complex z) {
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex corr = 0.0;
    Complex pow = inv;
    for (double coeff : kStirling) {
        corr += coeff * pow;
        pow *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr;
}

// log(1/Gamma(z)); returns false when 1/Gamma(z) vanishes (z a pole).
bool log_rgamma(Complex z, Complex& out) {
    if (is_nonpositive_integer(z)) return false;
    out = -log_gamma_complex(z);
    return true;
}

void check_series_params(const Hyp2F1Params& p) {
    if (is_nonpositive_integer(p.c)) {
        throw PoleError("hyp2f1: c is a non-positive integer (" + std::to_string(p.c.real()) + ")");
    }
}

bool is_degenerate(Complex d) {
    return std::abs(d.imag()) < kDegenerateTol &&
           std::abs(d.real() - std::round(d.real())) < kDegenerateTol;
}

}  // namespace

Complex log_sin_pi(Complex z) {
    const Complex w = kPi * z;
    const Complex i{0.0, 1.0};
    if (std::abs(w.imag()) < 20.0) return std::log(std::sin(w));
    if (w.imag() > 0.0) {
        // sin w = e^{-iw} (1 - e^{2iw}) i/2
        return -i * w + std::log(1.0 - std::exp(2.0 * i * w)) + Complex{std::log(0.5), kPi / 2};
    }
    // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
    return i * w + std::log(1.0 - std::exp(-2.0 * i * w)) - Complex{std::log(2.0), kPi / 2};
}

Complex log_gamma_complex(Complex z) {
    if (is_nonpositive_integer(z)) {
        throw PoleError("log_gamma_complex: pole at z = " + std::to_string(z.real()));
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("log_gamma_complex: non-finite argument");
    }
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - log_gamma_complex(1.0 - z);
    }
    Complex shift = 0.0;
    while (std::abs(z) < kStirlingRadius) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - shift;
}

Complex gamma_complex(Complex z) {
    if (is_nonpositive_integer(z)) {
        throw PoleError("gamma_complex: pole at z = " + std::to_string(z.real()));
    }
    if (z.imag() == 0.0 && z.real() >= 1.0 && z.real() <= 171.0 && z.real() == std::round(z.real())) {
        double fact = 1.0;
        for (int k = 2; k < static_cast<int>(z.real()); ++k) fact *= k;
        return fact;
    }
    const Complex lg = log_gamma_complex(z);
    if (lg.real() > kLogMax) {
        throw OverflowError("gamma_complex: |Gamma(z)| overflows; use log_gamma_complex");
    }
    return std::exp(lg);
}

Complex hyp2f1_series(const Hyp2F1Params& p, Complex z) {
    check_series_params(p);
    if (std::abs(z) >= 1.0) throw DomainError("hyp2f1_series: requires |z| < 1");
    // Accumulated in extended precision: with |Im a|, |Im b|, |Im c| ~ 10..100
    // the terms grow by many orders of magnitude before they decay.
    using LComplex = std::complex<long double>;
    const LComplex a(p.a), b(p.b), c(p.c), zz(z);
    LComplex sum = 1.0L;
    LComplex term = 1.0L;
    int quiet = 0;
    for (int n = 0; n < kSeriesMaxTerms; ++n) {
        const long double dn = n;
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0L)) * zz;
        sum += term;
        // Two consecutive small terms guard against an accidental tiny term
        // while the series is still growing.
        if (std::abs(term) < kSeriesRelTol * std::abs(sum)) {
            if (++quiet == 2) return Complex(sum);
        } else {
            quiet = 0;
        }
        if (term == 0.0L) return Complex(sum);
    }
    throw ConvergenceError("hyp2f1_series: no convergence within " +
                           std::to_string(kSeriesMaxTerms) + " terms");
}

Complex hyp2f1_near_one(const Hyp2F1Params& p, Complex one_minus_z) {
    check_series_params(p);
    const Complex d = p.c - p.a - p.b;
    if (is_degenerate(d)) {
        throw DegenerateParameterError("hyp2f1_near_one: c - a - b is an integer");
    }
    if (std::abs(one_minus_z) >= 1.0) throw DomainError("hyp2f1_near_one: requires |1 - z| < 1");
    if (one_minus_z.imag() == 0.0 && one_minus_z.real() <= 0.0) {
        throw DomainError("hyp2f1_near_one: requires |arg(1 - z)| < pi");
    }
    const Complex lgc = log_gamma_complex(p.c);
    const Complex log_w = std::log(one_minus_z);

    Complex result = 0.0;
    Complex r1, r2;
    if (log_rgamma(p.c - p.a, r1) && log_rgamma(p.c - p.b, r2)) {
        const Complex coeff = std::exp(lgc + log_gamma_complex(d) + r1 + r2);
        result += coeff * hyp2f1_series({p.a, p.b, 1.0 - d}, one_minus_z);
    }
    if (log_rgamma(p.a, r1) && log_rgamma(p.b, r2)) {
        const Complex coeff = std::exp(lgc + log_gamma_complex(-d) + r1 + r2 + d * log_w);
        result += coeff * hyp2f1_series({p.c - p.a, p.c - p.b, 1.0 + d}, one_minus_z);
    }
    return result;
}

Complex hyp2f1(const Hyp2F1Params& p, Complex z, Complex one_minus_z) {
    check_series_params(p);
    if (z == 0.0) return 1.0;
    const double az = std::abs(z);
    const double aw = std::abs(one_minus_z);
    if (az >= 1.0 && aw >= 1.0) {
        throw DomainError("hyp2f1: z outside both |z| < 1 and |1 - z| < 1");
    }
    const Complex d = p.c - p.a - p.b;
    const bool near_one_ok = aw < 1.0 && !is_degenerate(d) &&
                             !(one_minus_z.imag() == 0.0 && one_minus_z.real() <= 0.0);
    if (az >= 1.0) return hyp2f1_near_one(p, one_minus_z);
    if (!near_one_ok) return hyp2f1_series(p, z);
    // Pick the route whose terms grow least; the leading ratio of successive
    // terms is ~ |ab/c| |z| and the peak term ~ exp of that.
    const double grow_direct = std::abs(p.a * p.b / p.c) * az + az / (1.0 - az);
    const double grow_left = std::abs(p.a * p.b / (1.0 - d));
    const double grow_right = std::abs((p.c - p.a) * (p.c - p.b) / (1.0 + d));
    const double grow_near = std::max(grow_left, grow_right) * aw + aw / (1.0 - aw);
    return grow_direct <= grow_near ? hyp2f1_series(p, z) : hyp2f1_near_one(p, one_minus_z);
}

Complex hyp2f1(const Hyp2F1Params& p, Complex z) { return hyp2f1(p, z, 1.0 - z); }

Complex hyp2f1_derivative(const Hyp2F1Params& p, Complex z, Complex one_minus_z) {
    const Complex scale = p.a * p.b / p.c;
    if (scale == 0.0) return 0.0;
    return scale * hyp2f1({p.a + 1.0, p.b + 1.0, p.c + 1.0}, z, one_minus_z);
}

Complex hyp2f1_derivative(const Hyp2F1Params& p, Complex z) {
    return hyp2f1_derivative(p, z, 1.0 - z);
}

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double log_sinh(double x) {
    if (!(x > 0.0)) throw DomainError("log_sinh: requires x > 0");
    if (x < 0.5) return std::log(std::sinh(x));
    return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

}  // namespace pairgen
