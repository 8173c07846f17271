#include <cmath>
#include <numbers>

#include "doctest.h"
#include "symkit/error.hpp"
#include "symkit/radial.hpp"

using namespace symkit;

namespace {
Vec v1(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}
Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}
const SymmetricSpace& h3() {
    static const auto s = SymmetricSpace::build(Family::hyperbolic, 3, Normalization::unit_curvature);
    return s;
}

RadialFunction h3_spherical(double l) {
    return RadialFunction::closed(h3(), [l](const std::vector<Jet>& x) { return sin(l * x[0]) / (l * sinh(x[0])); });
}
}  // namespace

TEST_CASE("spherical functions of hyperbolic_3 are Casimir eigenfunctions") {
    for (double l : {0.5, 1.0, 2.0}) {
        const auto f = h3_spherical(l);
        double worst = 0.0;
        for (double r = 0.1; r <= 8.0 + 1e-12; r += 0.05) {
            const double fr = f(v1(r));
            if (std::abs(fr) < 1e-8) continue;  // zeros of sin(l r)
            worst = std::max(worst, std::abs(radial_casimir_at(f, v1(r)) / ((l * l + 1.0) * fr) - 1.0));
        }
        CHECK(worst < 1e-6);
    }
    // l -> 0: r / sinh r with eigenvalue ||rho||^2 = 1
    const auto f0 = RadialFunction::closed(h3(), [](const std::vector<Jet>& x) { return x[0] / sinh(x[0]); });
    for (double r : {0.3, 1.0, 4.0}) CHECK(radial_casimir_at(f0, v1(r)) == doctest::Approx(f0(v1(r))).epsilon(1e-12));
}

TEST_CASE("constants are annihilated exactly") {
    const auto sl3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const auto one = RadialFunction::closed(sl3, [](const std::vector<Jet>&) { return Jet(1.0, 2); });
    CHECK(radial_casimir_at(one, v2(0.4, 1.1)) == 0.0);
    const auto one3 = RadialFunction::closed(h3(), [](const std::vector<Jet>&) { return Jet(1.0, 1); });
    CHECK(radial_casimir_at(one3, v1(2.0)) == 0.0);
    const auto c = RadialFunction::norm_profile(h3(), [](double) { return ProfileJet{3.0, 0.0, 0.0}; });
    CHECK(radial_casimir_at(c, v1(0.7)) == 0.0);
}

TEST_CASE("walls are outside the domain of the radial Casimir") {
    const auto f = h3_spherical(1.0);
    CHECK_THROWS_AS(radial_casimir_at(f, v1(0.0)), DomainError);
    const auto sl3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const auto g = RadialFunction::norm_profile(sl3, [](double r) { return ProfileJet{std::exp(-r), -std::exp(-r), std::exp(-r)}; });
    CHECK_THROWS_AS(radial_casimir_at(g, v2(0.0, 1.0)), DomainError);
    CHECK(std::isfinite(radial_casimir_at(g, v2(0.3, 1.0))));
}

TEST_CASE("norm profiles agree with closed expressions in rank two") {
    // exp(-||H||) through the profile and through the jet of the norm
    const auto sl3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const auto a = RadialFunction::norm_profile(sl3, [](double r) { return ProfileJet{std::exp(-r), -std::exp(-r), std::exp(-r)}; });
    const auto b = RadialFunction::closed(sl3, [&sl3](const std::vector<Jet>& x) {
        Jet n2 = x[0] * x[0] * sl3.gram()(0, 0) + 2.0 * x[0] * x[1] * sl3.gram()(0, 1) + x[1] * x[1] * sl3.gram()(1, 1);
        return exp(-sqrt(n2));
    });
    for (const Vec& H : {v2(0.2, 0.9), v2(1.5, 0.4), v2(3.0, 3.0)})
        CHECK(radial_casimir_at(a, H) == doctest::Approx(radial_casimir_at(b, H)).epsilon(1e-11));
}

TEST_CASE("grid functions: cubic interpolation and the resolution check") {
    const double l = 1.0, h = 0.01;
    std::vector<double> vals;
    for (int k = 0; k <= 1000; ++k) {
        const double r = 0.05 + h * k;
        vals.push_back(std::sin(l * r) / (l * std::sinh(r)));
    }
    const auto f = RadialFunction::grid(h3(), 0.05, h, vals, 1e-4);
    const auto exact = h3_spherical(l);
    CHECK(f(v1(1.234)) == doctest::Approx(exact(v1(1.234))).epsilon(1e-7));
    CHECK(radial_casimir_at(f, v1(1.234)) == doctest::Approx(2.0 * exact(v1(1.234))).epsilon(1e-4));

    std::vector<double> coarse;
    for (int k = 0; k <= 10; ++k) coarse.push_back(std::sin(8.0 * k * 0.5));
    const auto g = RadialFunction::grid(h3(), 0.5, 0.5, coarse, 1e-8);
    CHECK_THROWS_AS(radial_casimir_at(g, v1(2.3)), ResolutionError);
}

TEST_CASE("derived functions carry values only") {
    const auto f = h3_spherical(1.0);
    const auto Df = radial_casimir_apply(h3(), f);
    CHECK_FALSE(Df.differentiable());
    CHECK(Df(v1(1.3)) == doctest::Approx(2.0 * f(v1(1.3))).epsilon(1e-10));
    CHECK_THROWS(Df.jet(v1(1.3)));
}

TEST_CASE("chamber frame and shell densities") {
    const auto sl3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const auto frame = chamber_frame(sl3);
    CHECK(frame.theta_max - frame.theta_min == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-12));
    for (double t : {frame.theta_min + 0.01, 0.5 * (frame.theta_min + frame.theta_max), frame.theta_max - 0.01}) {
        const Vec H = frame.point(2.0, t);
        CHECK(sl3.norm(H) == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(sl3.in_open_chamber(H));
    }
    // arc length of the chamber at radius r: exp(log 1) integrates to r * pi / 3
    const double L = log_chamber_shell_density(frame, 2.0, [](const Vec&) { return 0.0; }, QuadratureSpec{});
    CHECK(std::exp(L) == doctest::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-12));
    CHECK(radial_shell_integral([](double r) { return -r; }, 0.0, 3.0, QuadratureSpec{}) ==
          doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-12));
    CHECK(std::isinf(radial_shell_integral([](double r) { return 800.0 * r; }, 1.0, 2.0, QuadratureSpec{})));
}
