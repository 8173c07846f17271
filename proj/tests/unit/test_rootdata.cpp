#include <cmath>
#include <random>

#include "doctest.h"
#include "symkit/error.hpp"
#include "symkit/rootdata.hpp"

using namespace symkit;

namespace {
Vec vec(std::initializer_list<double> v) {
    Vec out(v.size());
    int i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

double brute_rho_sq(int n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += (n + 1.0 - 2.0 * k) * (n + 1.0 - 2.0 * k);
    return s / (2.0 * n);
}
}  // namespace

TEST_CASE("sl_3_r structure") {
    const auto s = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    CHECK(s.rank() == 2);
    CHECK(s.roots().size() == 3);
    for (const auto& r : s.roots()) CHECK(r.multiplicity == 1);
    CHECK(s.dim_n() == 3);
    CHECK(s.dim_gk() == 5);
    CHECK(s.rho_norm_sq() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(s.simple_roots().size() == 2);
}

TEST_CASE("sl_2_r and hyperbolic_3 structure") {
    const auto s2 = SymmetricSpace::build(Family::sl_n_r, 2, Normalization::killing);
    CHECK(s2.rank() == 1);
    CHECK(s2.dim_gk() == 2);
    CHECK(s2.rho_norm_sq() == doctest::Approx(0.5).epsilon(1e-15));

    const auto h3 = SymmetricSpace::build(Family::hyperbolic, 3, Normalization::unit_curvature);
    CHECK(h3.rank() == 1);
    CHECK(h3.roots()[0].multiplicity == 2);
    CHECK(h3.dim_n() == 2);
    CHECK(h3.dim_gk() == 3);
    CHECK(h3.rho_norm() == doctest::Approx(1.0).epsilon(1e-15));
    // the shortest root has unit dual norm
    CHECK(h3.dual_norm(h3.roots()[0].vector) == doctest::Approx(1.0));
}

TEST_CASE("hyperbolic_3 agrees with the complex_sl_2 root data") {
    const auto h3 = SymmetricSpace::build(Family::hyperbolic, 3, Normalization::unit_curvature);
    const auto c2 = SymmetricSpace::build(Family::complex_sl_n, 2, Normalization::unit_curvature);
    CHECK(c2.dim_gk() == 3);
    CHECK(c2.rho_norm_sq() == doctest::Approx(h3.rho_norm_sq()).epsilon(1e-15));
    CHECK(c2.gram()(0, 0) == doctest::Approx(h3.gram()(0, 0)));
}

TEST_CASE("rho norm equals the brute-force sum and dims follow the closed forms") {
    for (int n = 2; n <= 50; ++n) {
        const auto s = SymmetricSpace::build(Family::sl_n_r, n, Normalization::killing);
        CHECK(std::abs(s.rho_norm_sq() - brute_rho_sq(n)) <= 1e-12 * brute_rho_sq(n));
        CHECK(s.dim_n() == n * (n - 1) / 2);
        CHECK(s.dim_gk() == n * (n + 1) / 2 - 1);
    }
    const auto s10 = SymmetricSpace::build(Family::sl_n_r, 10, Normalization::killing);
    CHECK(s10.rho_norm_sq() == doctest::Approx(16.5).epsilon(1e-14));
    for (int d = 2; d <= 12; ++d)
        CHECK(SymmetricSpace::build(Family::hyperbolic, d, Normalization::killing).dim_gk() == d);
}

TEST_CASE("rho is dominant for every family up to rank 10") {
    for (auto norm : {Normalization::killing, Normalization::unit_curvature}) {
        for (int n = 2; n <= 11; ++n) {
            for (auto f : {Family::sl_n_r, Family::complex_sl_n}) {
                const auto s = SymmetricSpace::build(f, n, norm);
                for (int k : s.simple_roots())
                    CHECK(s.dual_inner(s.rho(), s.roots()[k].vector) > 0.0);
            }
            const auto h = SymmetricSpace::build(Family::hyperbolic, n, norm);
            CHECK(h.dual_inner(h.rho(), h.roots()[0].vector) > 0.0);
        }
    }
}

TEST_CASE("killing gram on sl_n_r diagonals is (n/2) Tr") {
    for (int n : {2, 3, 5}) {
        const auto s = SymmetricSpace::build(Family::sl_n_r, n, Normalization::killing);
        std::mt19937 rng(n);
        std::normal_distribution<double> g;
        Vec d1(n), d2(n);
        for (int i = 0; i < n; ++i) d1[i] = g(rng), d2[i] = g(rng);
        d1.array() -= d1.mean();
        d2.array() -= d2.mean();
        const double tr = d1.dot(d2);
        CHECK(s.inner(from_diagonal(s, d1), from_diagonal(s, d2)) ==
              doctest::Approx(0.5 * n * tr).epsilon(1e-12));
        CHECK(trace_form_scale(s) == doctest::Approx(0.5 * n));
        CHECK((to_diagonal(s, from_diagonal(s, d1)) - d1).norm() < 1e-12);
    }
}

TEST_CASE("pairing examples") {
    const auto s = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const Vec H = from_diagonal(s, vec({1, 0, -1}));
    CHECK(s.pairing(root_ij(s, 1, 2), H) == doctest::Approx(1.0));
    CHECK(s.pairing(root_ij(s, 1, 3), H) == doctest::Approx(2.0));
    CHECK(s.norm(Vec::Zero(2)) == 0.0);
    CHECK_THROWS_AS(s.pairing(vec({1}), H), DomainError);

    const auto h3 = SymmetricSpace::build(Family::hyperbolic, 3, Normalization::unit_curvature);
    CHECK(h3.pairing(h3.roots()[0].vector, vec({2.5})) == doctest::Approx(2.5));
    CHECK(h3.norm(vec({2.5})) == doctest::Approx(2.5));
}

TEST_CASE("pairing is symmetric and bilinear") {
    const auto s = SymmetricSpace::build(Family::sl_n_r, 5, Normalization::killing);
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    auto rnd = [&] {
        Vec v(4);
        for (int i = 0; i < 4; ++i) v[i] = g(rng);
        return v;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const Vec a = rnd(), b = rnd(), c = rnd();
        const double x = g(rng), y = g(rng);
        CHECK(s.inner(a, b) == s.inner(b, a));
        CHECK(std::abs(s.inner(x * a + y * b, c) - x * s.inner(a, c) - y * s.inner(b, c)) < 1e-12 * (1 + std::abs(s.inner(a, c)) + std::abs(s.inner(b, c))));
        CHECK(s.dual_inner(a, b) == doctest::Approx(s.dual_inner(b, a)).epsilon(1e-15));
    }
}

TEST_CASE("delta density") {
    const auto s2 = SymmetricSpace::build(Family::sl_n_r, 2, Normalization::killing);
    CHECK(delta_density(s2, vec({0.0})) == 0.0);
    CHECK(delta_density(s2, vec({2.0})) == doctest::Approx(std::sinh(2.0)));
    CHECK(delta_density(s2, vec({2.0})) == doctest::Approx(3.62686).epsilon(1e-5));
    const auto s3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const Vec H = from_diagonal(s3, vec({1, 0, -1}));
    const double expected = std::sinh(1.0) * std::sinh(1.0) * std::sinh(2.0);
    CHECK(delta_density(s3, H) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(delta_density(s3, H) == doctest::Approx(5.00906).epsilon(1e-5));
    CHECK_THROWS_AS(delta_density(s3, vec({-1.0, 0.5})), DomainError);
    CHECK(std::isinf(log_delta_density(s3, vec({0.0, 1.0}))));
    // overflow-safe log variant
    CHECK(log_delta_density(s2, vec({1000.0})) == doctest::Approx(1000.0 - std::log(2.0)));
}

TEST_CASE("density sandwich") {
    const auto s2 = SymmetricSpace::build(Family::sl_n_r, 2, Normalization::killing);
    for (double t : {5.0, 10.0, 20.0, 40.0}) {
        const double ratio = delta_density(s2, vec({t})) / std::exp(2.0 * s2.rho().dot(vec({t})));
        CHECK(ratio == doctest::Approx(0.5).epsilon(1e-3));
    }
    const auto w = density_sandwich(s2, vec({0.0}));
    CHECK(w.on_wall);
    CHECK(w.lower == 0.0);
    CHECK(w.upper == 0.0);
    const auto s3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const Vec H = from_diagonal(s3, vec({1, 0, -1}));
    const auto e = density_sandwich(s3, H);
    const double r = delta_density(s3, H) / e.upper;
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
}

TEST_CASE("Weyl orbits") {
    const auto s3 = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    const Vec H = from_diagonal(s3, vec({1, 0, -1}));
    const auto orbit = weyl_orbit(s3, H);
    CHECK(orbit.size() == 6);
    int dominant = 0;
    for (const auto& w : orbit) dominant += is_dominant(s3, w) ? 1 : 0;
    CHECK(dominant == 1);
    CHECK(weyl_orbit(s3, Vec::Zero(2)).size() == 1);

    const auto h = SymmetricSpace::build(Family::hyperbolic, 4, Normalization::unit_curvature);
    const auto o = weyl_orbit(h, vec({1.5}));
    REQUIRE(o.size() == 2);
    CHECK(o[1][0] == doctest::Approx(-1.5));

    // S_4 acting on generic diagonals
    const auto s4 = SymmetricSpace::build(Family::sl_n_r, 4, Normalization::killing);
    CHECK(weyl_orbit(s4, from_diagonal(s4, vec({3, 1, -0.5, -3.5}))).size() == 24);
}

TEST_CASE("delta is invariant in absolute value along random orbits") {
    const auto s = SymmetricSpace::build(Family::sl_n_r, 4, Normalization::killing);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.05, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        Vec H(3);
        for (int i = 0; i < 3; ++i) H[i] = u(rng);
        const double base = delta_density(s, H);
        for (const auto& w : weyl_orbit(s, H)) {
            double prod = 1.0;
            for (const auto& r : s.roots()) prod *= std::pow(std::abs(std::sinh(r.vector.dot(w))), r.multiplicity);
            CHECK(prod == doctest::Approx(base).epsilon(1e-12));
            CHECK((dominant_representative(s, w) - H).norm() < 1e-10);
        }
    }
}

TEST_CASE("construction and validation errors") {
    CHECK_THROWS_AS(SymmetricSpace::build(Family::sl_n_r, 1, Normalization::killing), ConstructionError);
    CHECK_THROWS_AS(SymmetricSpace::build(Family::hyperbolic, 1, Normalization::killing), ConstructionError);
    CHECK_THROWS_AS(SymmetricSpace::build(Family::custom, 2, Normalization::killing), ConstructionError);
    CHECK_THROWS_AS(parse_family("g2"), ConstructionError);

    // BC_1: alpha and 2 alpha, alpha indivisible
    std::vector<Root> bc1 = {{vec({1.0}), 2, true}, {vec({2.0}), 1, false}};
    const auto ok = SymmetricSpace::custom(bc1, std::nullopt, Normalization::unit_curvature);
    CHECK(ok.dim_n() == 3);
    CHECK(ok.root_system().indivisible_count() == 1);
    // rho = (2 alpha + 2 alpha) / 2 = 2 alpha
    CHECK(ok.rho()[0] == doctest::Approx(2.0));

    std::vector<Root> bad_flag = {{vec({1.0}), 2, true}, {vec({2.0}), 1, true}};
    CHECK_THROWS_AS(SymmetricSpace::custom(bad_flag, std::nullopt, Normalization::killing), ValidationError);
    std::vector<Root> triple = {{vec({1.0}), 1, true}, {vec({3.0}), 1, true}};
    CHECK_THROWS_AS(SymmetricSpace::custom(triple, std::nullopt, Normalization::killing), ValidationError);
    std::vector<Root> zero = {{vec({0.0}), 1, true}};
    CHECK_THROWS_AS(SymmetricSpace::custom(zero, std::nullopt, Normalization::killing), ValidationError);
    std::vector<Root> neg = {{vec({1.0}), 1, true}, {vec({-1.0}), 1, true}};
    CHECK_THROWS_AS(SymmetricSpace::custom(neg, std::nullopt, Normalization::killing), ValidationError);
}

TEST_CASE("custom A2 reproduces sl_3_r and descriptors round-trip") {
    std::vector<Root> a2 = {{vec({1, 0}), 1, true}, {vec({0, 1}), 1, true}, {vec({1, 1}), 1, true}};
    const auto c = SymmetricSpace::custom(a2, std::nullopt, Normalization::killing);
    const auto s = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    CHECK((c.gram() - s.gram()).norm() < 1e-14);
    CHECK(c.rho_norm_sq() == doctest::Approx(s.rho_norm_sq()));

    for (const auto& sp : {s, c, SymmetricSpace::build(Family::hyperbolic, 3, Normalization::unit_curvature),
                            SymmetricSpace::custom(a2, std::nullopt, Normalization::unit_curvature)}) {
        const auto j = sp.to_json();
        const auto back = SymmetricSpace::from_json(nlohmann::json::parse(j.dump()));
        CHECK(back.to_json().dump() == j.dump());
    }
    CHECK_THROWS_AS(SymmetricSpace::from_json(nlohmann::json::parse(R"({"size": 3})")), ConstructionError);
}
