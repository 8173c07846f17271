#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "symkit/error.hpp"
#include "symkit/kernels.hpp"
#include "symkit/quadrature.hpp"

using namespace symkit;
using std::numbers::pi;

namespace {
Vec v1(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}
const SymmetricSpace& h3() {
    static const auto s = SymmetricSpace::build(Family::hyperbolic, 3, Normalization::unit_curvature);
    return s;
}
const SymmetricSpace& h2() {
    static const auto s = SymmetricSpace::build(Family::hyperbolic, 2, Normalization::unit_curvature);
    return s;
}

// (4 pi t)^{-3/2} (r / sinh r) e^{-t - r^2 / 4t}
double h3_heat(double t, double r) {
    const double shape = r == 0.0 ? 1.0 : r / std::sinh(r);
    return std::pow(4.0 * pi * t, -1.5) * shape * std::exp(-t - r * r / (4.0 * t));
}

// Spherical transform on H^3 with phi_l(r) = sin(l r) / (l sinh r), by Boost quadrature.
double h3_spherical_transform(const std::function<double(double)>& k, double l) {
    auto f = [&](double r) {
        const double phi = r == 0.0 ? 1.0 : std::sin(l * r) / (l * std::sinh(r));
        return 4.0 * pi * k(r) * phi * std::sinh(r) * std::sinh(r);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 40.0, 15, 1e-13);
}
}  // namespace

TEST_CASE("closed heat kernel on hyperbolic_3") {
    CHECK(heat_kernel(h3(), 1.0, 0.0, HeatMode::closed) ==
          doctest::Approx(std::pow(4.0 * pi, -1.5) * std::exp(-1.0)).epsilon(1e-14));
    CHECK(heat_kernel(h3(), 1.0, 0.0, HeatMode::closed) == doctest::Approx(0.008263).epsilon(1e-4));
    for (double t : {0.2, 1.0, 3.0})
        for (double r : {0.0, 0.5, 2.0, 7.0})
            CHECK(heat_kernel(h3(), t, r, HeatMode::closed) == doctest::Approx(h3_heat(t, r)).epsilon(1e-13));
}

TEST_CASE("spectral and closed heat kernels agree after one constant fit at (1, 1)") {
    const double C = heat_normalization(h3());
    double worst = 0.0;
    for (double t : {0.1, 0.3, 1.0, 2.5, 5.0})
        for (int k = 0; k <= 20; ++k) {
            const double r = 0.5 * k;
            const double closed = h3_heat(t, r);
            worst = std::max(worst, std::abs(C * heat_kernel(h3(), t, r, HeatMode::spectral) - closed) / closed);
        }
    CHECK(worst < 1e-6);
}

TEST_CASE("closed mode needs the unit curvature hyperbolic planes") {
    const auto sl3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const auto h2k = SymmetricSpace::build(Family::hyperbolic, 2, Normalization::killing);
    CHECK_FALSE(has_closed_heat_kernel(sl3));
    CHECK_FALSE(has_closed_heat_kernel(h2k));
    CHECK(has_closed_heat_kernel(h2()));
    CHECK_THROWS_AS(heat_kernel(sl3, 1.0, 1.0, HeatMode::closed), CapabilityError);
    CHECK_THROWS_AS(heat_kernel(h2k, 1.0, 1.0, HeatMode::closed), CapabilityError);
    CHECK_THROWS_AS(heat_kernel(h3(), 0.0, 1.0, HeatMode::closed), PreconditionError);
}

TEST_CASE("heat kernels have unit L1 mass") {
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        CHECK(heat_kernel_l1_mass(h3(), t) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(heat_kernel_l1_mass(h2(), t) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("semigroup law through the spherical transform of the closed kernel") {
    const double t = 0.4, s = 0.9;
    for (double l : {0.3, 1.0, 2.2}) {
        const double a = h3_spherical_transform([&](double r) { return h3_heat(t, r); }, l);
        const double b = h3_spherical_transform([&](double r) { return h3_heat(s, r); }, l);
        const double ab = h3_spherical_transform([&](double r) { return h3_heat(t + s, r); }, l);
        CHECK(a == doctest::Approx(std::exp(-t * (1.0 + l * l))).epsilon(1e-9));
        CHECK(a * b == doctest::Approx(ab).epsilon(1e-8));
    }
}

TEST_CASE("hyperbolic_2 spectral heat kernel is positive and decreasing") {
    double prev = INFINITY;
    for (int k = 0; k <= 50; ++k) {
        const double v = heat_kernel(h2(), 0.5, 0.1 * k, HeatMode::spectral);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    const double C = heat_normalization(h2());
    for (double r : {0.0, 1.0, 3.0})
        CHECK(C * heat_kernel(h2(), 0.5, r, HeatMode::spectral) ==
              doctest::Approx(heat_kernel(h2(), 0.5, r, HeatMode::closed)).epsilon(1e-6));
}

TEST_CASE("BGR kernel against the Bessel closed form on hyperbolic_3") {
    // kappa_s(r) = (2 pi^2)^{-1} sqrt(pi) 2^{1/2 - s} r^{s - 1/2} K_{|s - 3/2|}(r) / (Gamma(s) sinh r)
    for (double s : {0.8, 1.0, 1.2, 2.0})
        for (double r : {1e-3, 0.5, 3.0}) {
            const double oracle = std::sqrt(pi) / (2.0 * pi * pi) / std::tgamma(s) * std::pow(2.0, 0.5 - s) *
                                  std::pow(r, s - 0.5) * std::cyl_bessel_k(std::abs(s - 1.5), r) / std::sinh(r);
            CHECK(bgr_kernel(h3(), s, r) == doctest::Approx(oracle).epsilon(1e-9));
        }
}

TEST_CASE("BGR ratio, origin behavior and singularity") {
    const double ratio = bgr_kernel(h3(), 1.0, 2.0) / bgr_kernel(h3(), 1.0, 1.0);
    CHECK(ratio == doctest::Approx(std::exp(-1.0) * std::sinh(1.0) / std::sinh(2.0)).epsilon(1e-6));
    CHECK(ratio == doctest::Approx(0.11920).epsilon(1e-4));
    // r kappa_1(r) tends to a positive constant
    const double c1 = 1e-3 * bgr_kernel(h3(), 1.0, 1e-3), c2 = 1e-5 * bgr_kernel(h3(), 1.0, 1e-5);
    CHECK(c2 > 0.0);
    CHECK(c1 == doctest::Approx(c2).epsilon(2e-3));
    CHECK_THROWS_AS(bgr_kernel(h3(), 1.0, 0.0), SingularityError);
    CHECK(std::isfinite(bgr_kernel(h3(), 2.0, 0.0)));
}

TEST_CASE("BGR log-log slopes near the origin and in the far field") {
    for (double s : {0.8, 1.0, 1.2}) {
        const double r1 = 1e-4, r2 = 1e-3;
        const double slope = (log_bgr_kernel(h3(), s, r2) - log_bgr_kernel(h3(), s, r1)) / std::log(r2 / r1);
        CHECK(slope == doctest::Approx(2.0 * s - 3.0).epsilon(0.05 / 3.0));
        CHECK(std::abs(slope - (2.0 * s - 3.0)) < 0.05);
    }
    // least squares on [5, 15]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (double r = 5.0; r <= 15.0; r += 0.5, ++m) {
        const double y = log_bgr_kernel(h3(), 1.0, r);
        sx += r, sy += y, sxx += r * r, sxy += r * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(std::abs(slope + 2.0) < 0.05);
}

TEST_CASE("subordination identity Gamma(s)^{-1} int t^{s-1} e^{-tx} dt = x^{-s}") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(1.0, 20.0), ss(0.3, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double x = xs(rng), s = ss(rng);
        const auto f = [&](double t) { return std::pow(t, s - 1.0) * std::exp(-t * x); };
        const double core = integrate_tanh_sinh(f, 0.0, 1.0, 1e-15, 1e-12).value;
        const auto tail = integrate_semi_infinite(f, 1.0, 4.0, 1e-15, 1e-12);
        CHECK((core + tail.value()) / std::tgamma(s) == doctest::Approx(std::pow(x, -s)).epsilon(1e-9));
    }
}

TEST_CASE("Anker-Ji envelope") {
    // exact kernel over envelope stays in a positive window on [1, 20]
    double lo = INFINITY, hi = 0.0;
    for (double r = 1.0; r <= 20.0; r += 0.25) {
        const double q = bgr_kernel(h3(), 1.0, r) / anker_ji_envelope(h3(), 1.0, v1(r));
        lo = std::min(lo, q), hi = std::max(hi, q);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo < 10.0);
    CHECK_THROWS_AS(anker_ji_envelope(h3(), 1.0, v1(0.5)), DomainError);

    // along rho the exponential part is -2 ||rho|| ||H||
    const auto b = asymptotic_bound(h3(), 1.0);
    for (double r : {1.0, 4.0, 11.0}) {
        const double poly = b.exponent() * std::log(r) + std::log1p(r);
        CHECK(log_anker_ji_envelope(h3(), 1.0, v1(r)) - poly == doctest::Approx(-2.0 * r).epsilon(1e-13));
    }
}

TEST_CASE("Lq admissibility arithmetic") {
    CHECK(lq_admissible(3, 1.0, 2.0));
    CHECK_FALSE(lq_admissible(3, 0.7, 1.9));
    CHECK(lq_threshold(3, 0.7) == doctest::Approx(1.875));
    CHECK(lq_admissible(5, 1.0, 1.6));
    CHECK_FALSE(lq_admissible(5, 1.0, 1.7));
    CHECK_FALSE(lq_admissible(3, 1.4, 2.5));  // q <= 2
    CHECK_FALSE(lq_admissible(3, 1.0, 1.0));  // q > 1
    CHECK_THROWS_AS(lq_admissible(3, 1.5, 1.5), PreconditionError);
}

TEST_CASE("Lq numerics on hyperbolic_3 follow the near-origin criterion") {
    const auto a = lq_norm_numeric(h3(), 1.0, 2.0);
    CHECK(a.finite());
    CHECK(a.mode == LqMode::exact);
    CHECK(lq_norm_numeric(h3(), 0.7, 1.8).finite());
    CHECK(lq_norm_numeric(h3(), 1.0, 1.01).finite());
    const auto d = lq_norm_numeric(h3(), 0.7, 1.95);
    CHECK_FALSE(d.finite());
    CHECK(d.near.verdict == Growth::diverging);
    CHECK(d.far.verdict == Growth::converging);
    CHECK_THROWS_AS(d.norm(), DivergenceError);

    for (double s : {0.6, 0.9, 1.2})
        for (double q : {1.2, 1.5, 1.8, 1.95}) {
            if (q > 2.0) continue;
            const auto n = lq_norm_numeric(h3(), s, q);
            CHECK_MESSAGE((n.near.verdict == Growth::converging) == (q < lq_threshold(3, s)), "s=" << s << " q=" << q);
            if (lq_admissible(3, s, q)) CHECK(n.finite());
        }
}

TEST_CASE("Lq numerics on hyperbolic_2 near the threshold") {
    // threshold 2 / (2 - 2 s) = 1.25 for s = 0.2
    CHECK(lq_norm_numeric(h2(), 0.2, 1.15).near.verdict == Growth::converging);
    CHECK(lq_norm_numeric(h2(), 0.2, 1.4).near.verdict == Growth::diverging);
}

TEST_CASE("Lq envelope mode on sl_3_r") {
    const auto sl3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    CHECK_THROWS_AS(lq_norm_numeric(sl3, 1.0, 1.5, {}, LqMode::exact), CapabilityError);
    const auto n = lq_norm_numeric(sl3, 1.0, 1.5);
    CHECK(n.mode == LqMode::envelope);
    CHECK(n.finite());
    // threshold 5 / 3
    CHECK(lq_norm_numeric(sl3, 1.0, 1.8).near.verdict == Growth::diverging);
}

TEST_CASE("kernel tables") {
    const auto rows = tabulate_bgr(h3(), 1.0, {0.5, 1.0, 2.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].value == doctest::Approx(bgr_kernel(h3(), 1.0, 1.0)));
    const auto heat = tabulate_heat(h3(), 1.0, {0.0, 1.0}, HeatMode::closed);
    CHECK(heat[0].value == doctest::Approx(h3_heat(1.0, 0.0)).epsilon(1e-14));
}
