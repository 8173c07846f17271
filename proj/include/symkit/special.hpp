#pragma once

#include <complex>

namespace symkit::special {

/// log|Gamma(z)| for complex z (Lanczos, g = 7, nine terms; reflection for
/// Re z < 1/2). Relative error of |Gamma| below 1e-13 away from the poles.
double log_abs_gamma(std::complex<double> z);

/// log|Gamma(x + iy)| + pi |y| / 2 for x >= 0. The O(|y|) part cancels
/// analytically, so differences of such terms stay accurate for huge |y|.
double log_abs_gamma_shifted(double x, double y);

/// A branch of log Gamma(z) for complex z; exp() of it is Gamma(z). Poles give
/// a real part of +inf.
std::complex<double> log_gamma(std::complex<double> z);

/// log(sinh x) for x > 0 without overflow; -inf at x == 0.
double log_sinh(double x);

/// x * coth(x), continuous through x = 0 where it equals 1.
double x_coth_x(double x);

/// sinh(x) / x, equal to 1 at x == 0.
double sinhc(double x);

/// log(1 + |t|^3 log^2 |t|), the logarithm of the imaginary-power growth profile.
double log_cowling_base(double t);

}  // namespace symkit::special
