#include "symkit/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace symkit::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};

std::complex<double> log_gamma_right(std::complex<double> z) {
    z -= 1.0;
    std::complex<double> series = kLanczos[0];
    for (int k = 1; k < 9; ++k) series += kLanczos[k] / (z + static_cast<double>(k));
    const std::complex<double> t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

double log_abs_gamma_right(std::complex<double> z) { return log_gamma_right(z).real(); }

}  // namespace

double log_abs_gamma(std::complex<double> z) {
    if (z.real() < 0.5) {
        // |Gamma(z) Gamma(1-z)| = pi / |sin(pi z)|
        const std::complex<double> s = std::sin(std::numbers::pi * z);
        const double abs_s = std::abs(s);
        if (abs_s == 0.0) return std::numeric_limits<double>::infinity();
        double log_abs_sin;
        if (!std::isfinite(abs_s)) {
            // |sin(pi (x + iy))| ~ exp(pi |y|) / 2 for large |y|
            log_abs_sin = std::numbers::pi * std::abs(z.imag()) - std::log(2.0);
        } else {
            log_abs_sin = std::log(abs_s);
        }
        return std::log(std::numbers::pi) - log_abs_sin - log_abs_gamma_right(1.0 - z);
    }
    return log_abs_gamma_right(z);
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() >= 0.5) return log_gamma_right(z);
    if (z.real() < -40.0) {
        // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) -
               log_gamma_right(1.0 - z);
    }
    // Gamma(z) = Gamma(z + k) / (z (z + 1) ... (z + k - 1))
    std::complex<double> shift = 0.0;
    while (z.real() < 0.5) {
        if (z == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_right(z) - shift;
}

double log_abs_gamma_shifted(double x, double y) {
    const double ay = std::abs(y);
    // Below |y| = 16 shift with Gamma(z) = Gamma(z + n) / prod_{k<n} (z + k) so
    // Stirling is used on both sides of the switch; the seam is at rounding level.
    const int n = (ay < 16.0 && x < 16.0) ? static_cast<int>(std::ceil(16.0 - x)) : 0;
    double shift = 0.0;
    for (int k = 0; k < n; ++k) shift += std::log(std::hypot(x + k, ay));
    const double xs = x + n;
    // Stirling: Re[(z - 1/2) log z - z] + pi y / 2, with pi/2 - arg z = atan2(x, y)
    const std::complex<double> z(xs, ay);
    double out = (xs - 0.5) * std::log(std::abs(z)) + ay * std::atan2(xs, ay) - xs +
                 0.5 * std::log(2.0 * std::numbers::pi);
    constexpr double kB[6] = {1.0 / 12.0,        -1.0 / 360.0,   1.0 / 1260.0,
                              -1.0 / 1680.0,     1.0 / 1188.0,   -691.0 / 360360.0};
    const std::complex<double> inv = 1.0 / z, inv2 = inv * inv;
    std::complex<double> term = inv, series = 0.0;
    for (double b : kB) {
        series += b * term;
        term *= inv2;
    }
    return out + series.real() - shift;
}

double log_sinh(double x) {
    if (x <= 0.0) return x == 0.0 ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::quiet_NaN();
    if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x));
}

double x_coth_x(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) return 1.0 + x * x / 3.0;
    if (ax > 20.0) return ax;
    return x / std::tanh(x);
}

double sinhc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

double log_cowling_base(double t) {
    const double a = std::abs(t);
    if (a == 0.0) return 0.0;
    const double l = std::log(a);
    if (a < 1e50) return std::log1p(a * a * a * l * l);
    // log of the product, which would overflow
    const double lp = 3.0 * l + 2.0 * std::log(l);
    return lp + std::log1p(std::exp(-lp));
}

}  // namespace symkit::special
