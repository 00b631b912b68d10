#pragma once

#include <complex>

namespace pairgen {

using Complex = std::complex<double>;

/// Parameter triple of the Gauss hypergeometric function 2F1(a, b; c; z).
struct Hyp2F1Params {
    Complex a;
    Complex b;
    Complex c;
};

// Series truncation: stop once |term| < kSeriesRelTol * |partial sum|.
inline constexpr double kSeriesRelTol = 1e-16;
inline constexpr int kSeriesMaxTerms = 100000;
// c-a-b closer than this to an integer is treated as degenerate.
inline constexpr double kDegenerateTol = 1e-9;

/// Gamma(z) for complex z. Throws PoleError at non-positive integers and
/// OverflowError when |Gamma(z)| does not fit in a double.
Complex gamma_complex(Complex z);

/// log Gamma(z). The real part is log|Gamma(z)| exactly; the imaginary part
/// follows the continuous branch for Re z >= 1/2 and is only defined modulo
/// 2*pi to the left of that line (reflection). exp() of the result always
/// reproduces Gamma(z).
Complex log_gamma_complex(Complex z);

/// log sin(pi z) that stays finite for large |Im z|. Same branch caveat as
/// log_gamma_complex: only exp() of the result is meaningful.
Complex log_sin_pi(Complex z);

/// 2F1(a, b; c; z) for |z| < 1 or z close to 1. Chooses between the direct
/// power series and the z -> 1 - z connection formula by whichever of |z|,
/// |1 - z| is smaller.
Complex hyp2f1(const Hyp2F1Params& p, Complex z);

/// Same as hyp2f1 but with 1 - z supplied by the caller, so that values of
/// z within rounding of 1 keep full relative precision in 1 - z.
Complex hyp2f1(const Hyp2F1Params& p, Complex z, Complex one_minus_z);

/// Direct power series in z. Requires |z| < 1.
Complex hyp2f1_series(const Hyp2F1Params& p, Complex z);

/// Connection formula mapping to series in 1 - z. Requires |1 - z| < 1,
/// |arg(1 - z)| < pi and c - a - b not an integer.
Complex hyp2f1_near_one(const Hyp2F1Params& p, Complex one_minus_z);

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
Complex hyp2f1_derivative(const Hyp2F1Params& p, Complex z);
Complex hyp2f1_derivative(const Hyp2F1Params& p, Complex z, Complex one_minus_z);

/// Numerically stable log cosh(x) and log sinh(x) (x > 0) for real x.
double log_cosh(double x);
double log_sinh(double x);

}  // namespace pairgen
