#include <cmath>

#include "doctest.h"
#include "symkit/error.hpp"
#include "symkit/examples.hpp"
#include "symkit/multiplier.hpp"

using namespace symkit;

namespace {
const SymmetricSpace& sl2() {
    static const auto s = SymmetricSpace::build(Family::sl_n_r, 2, Normalization::killing);
    return s;
}
const SymmetricSpace& sl3() {
    static const auto s = SymmetricSpace::build(Family::sl_n_r, 3, Normalization::killing);
    return s;
}
Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}
}  // namespace

TEST_CASE("slow-decay symbol outside and across the gluing zone") {
    const double A = 0.4;
    const auto f = slow_decay_symbol(sl3(), A);
    // ||H|| = 2 along rho, and at a generic chamber point scaled to norm 2
    const Vec rho = sl3().rho_vector();
    CHECK(f(2.0 * rho / sl3().norm(rho)) == doctest::Approx(std::exp(-2.0 * A)).epsilon(1e-14));
    const Vec H = v2(0.3, 1.7);
    CHECK(f(2.0 * H / sl3().norm(H)) == doctest::Approx(std::exp(-2.0 * A)).epsilon(1e-14));

    // C^2 gluing at r = 1 and r0, from the closed transition polynomial
    const auto t1 = f.transition(1.0);
    const double e = std::exp(-A);
    CHECK(t1.v == doctest::Approx(e).epsilon(1e-14));
    CHECK(std::abs(t1.d1 - (-A * e)) < 1e-10);
    CHECK(std::abs(t1.d2 - A * A * e) < 1e-10);
    const auto t0 = f.transition(0.5);
    CHECK(t0.v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(t0.d1) < 1e-10);
    CHECK(std::abs(t0.d2) < 1e-10);
    CHECK_THROWS_AS(f.transition(1.5), DomainError);

    for (int k = 0; k <= 2000; ++k) {
        const double v = f.profile(0.0025 * k).v;
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("slow-decay symbol preconditions") {
    CHECK_THROWS_AS(slow_decay_symbol(sl2(), 0.0), PreconditionError);
    CHECK_THROWS_AS(slow_decay_symbol(sl2(), 1.0, Gluing{1.2, 1.0}), PreconditionError);
    CHECK_THROWS_AS(slow_decay_symbol(sl2(), 1.0, Gluing{0.5, 1.5}), PreconditionError);
    CHECK_THROWS_AS(slow_decay_symbol(sl2(), 1.0, Gluing{0.5, 0.0}), PreconditionError);
}

TEST_CASE("decay thresholds") {
    const auto t3 = decay_threshold(sl3(), 5.0 + 1e-9);
    CHECK(t3.value == doctest::Approx(std::sqrt(4.0 / 3.0) / 5.0).epsilon(1e-8));
    CHECK(t3.value == doctest::Approx(0.23094).epsilon(1e-5));
    const auto t2 = decay_threshold(sl2(), 2.0 + 1e-9);
    CHECK(t2.value == doctest::Approx(std::sqrt(0.5) / 2.0).epsilon(1e-8));
    CHECK(t2.value == doctest::Approx(0.35355).epsilon(1e-5));
    CHECK_THROWS_AS(decay_threshold(sl3(), 4.0), PreconditionError);
    const auto q = decay_threshold(sl3(), 4.0, SgConvention::quarter_dimension);
    CHECK(q.convention == SgConvention::quarter_dimension);
    CHECK(q.to_json()["convention_rule"] == describe(SgConvention::quarter_dimension));
    CHECK(parse_sg_convention("quarter") == SgConvention::quarter_dimension);
}

TEST_CASE("threshold law n * A_threshold -> sqrt(2/3)") {
    const auto r = slnr_report(100, 1e-9);
    CHECK(std::abs(r.A_threshold * 100.0 / std::sqrt(2.0 / 3.0) - 1.0) < 0.02);
    CHECK(std::abs(r.rho_norm_sq_approx / r.rho_norm_sq - 1.0) < 0.05);
}

TEST_CASE("Sobolev norm dichotomy on sl_2_r") {
    const double S_G = 2.5;
    const double thr = decay_threshold(sl2(), S_G).value;
    CHECK(thr == doctest::Approx(std::sqrt(0.5) / 2.5).epsilon(1e-14));
    const auto fin = symbol_sobolev_norm(sl2(), slow_decay_symbol(sl2(), 1.2 * thr), S_G);
    CHECK(fin.finite());
    CHECK(std::isfinite(fin.value()));
    CHECK(fin.partial.size() == 3);
    const auto div = symbol_sobolev_norm(sl2(), slow_decay_symbol(sl2(), 0.8 * thr), S_G);
    CHECK(div.verdict == Growth::diverging);
    CHECK_THROWS_AS(div.value(), DivergenceError);
    // envelope rates, well away from the threshold
    CHECK(symbol_sobolev_norm(sl2(), slow_decay_symbol(sl2(), 0.4), S_G).finite());
    CHECK(symbol_sobolev_norm(sl2(), slow_decay_symbol(sl2(), 0.2), S_G).verdict == Growth::diverging);
}

TEST_CASE("Sobolev norm dichotomy on sl_3_r") {
    const double S_G = 5.5;
    const double thr = decay_threshold(sl3(), S_G).value;
    CHECK(symbol_sobolev_norm(sl3(), slow_decay_symbol(sl3(), 1.2 * thr), S_G).finite());
    CHECK(symbol_sobolev_norm(sl3(), slow_decay_symbol(sl3(), 0.8 * thr), S_G).verdict == Growth::diverging);
}

TEST_CASE("outer Sobolev mass decreases in A") {
    // the gluing zone steepens with A, so only the part over ||H|| >= 1 is monotone
    double prev = INFINITY;
    for (double A : {0.4, 1.0, 3.0, 10.0}) {
        const auto n = symbol_sobolev_norm(sl2(), slow_decay_symbol(sl2(), A), 2.5);
        REQUIRE(n.finite());
        CHECK(n.outer < prev);
        prev = n.outer;
    }
}

TEST_CASE("Casimir envelope |Df| <= D e^{-A ||H||}") {
    const auto f = slow_decay_symbol(sl3(), 0.3);
    const auto fit = fit_casimir_envelope(f);
    CHECK(fit.D > 0.0);
    CHECK(std::isfinite(fit.D));
    CHECK(fit.samples > 0);
    CHECK(fit.to_json()["near_wall_status"] == "unverified");
    // the fitted D bounds fresh samples along rho
    const Vec rho = sl3().rho_vector() / sl3().norm(sl3().rho_vector());
    for (double r = 1.5; r <= 39.0; r += 2.5) CHECK(std::abs(f.casimir(r * rho)) <= fit.D * std::exp(-0.3 * r) * (1 + 1e-9));
}

TEST_CASE("symbol profile rows") {
    const auto rows = symbol_profile(slow_decay_symbol(sl2(), 1.0), {0.25, 2.0});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].f == 1.0);
    CHECK(rows[0].Df == 0.0);
    CHECK(rows[1].f == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("SL(3, R) comparison report") {
    const auto r = slnr_report(3, 1e-9);
    CHECK(r.dim_gk == 5);
    CHECK(r.rho_norm_sq == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(r.A_threshold == doctest::Approx(0.23094).epsilon(1e-5));
    CHECK(r.d_G == 2);
    CHECK(r.adjoint_decay_rate == doctest::Approx(std::sqrt(0.5) * 2.0 / 3.0).epsilon(1e-14));
    CHECK(r.adjoint_decay_rate == doctest::Approx(0.47140).epsilon(1e-5));
    CHECK(r.verdict);
    CHECK(r.comparison_available);
    CHECK(r.p_min == doctest::Approx(5.0 / 3.0).epsilon(1e-8));
    CHECK(r.p_max == doctest::Approx(2.5).epsilon(1e-8));
    // p interval at S_G = 5 exactly
    const auto iv = p_interval(5.0, 1.0);
    CHECK(iv.p_min == 10.0 / 6.0);
    CHECK(iv.p_max == 2.5);

    CHECK(slnr_report(4, 1e-6).d_G == 4);
    CHECK(slnr_report(5, 1e-6).d_G == 6);
    CHECK_FALSE(slnr_report(2, 1e-6).comparison_available);
    CHECK_THROWS_AS(slnr_report(3, 0.0), PreconditionError);
}

TEST_CASE("report fields are recomputable and serialize losslessly") {
    for (int n : {2, 3, 4, 7, 20}) {
        const auto r = slnr_report(n, 0.25);
        CHECK(r.dim_gk == n * (n + 1) / 2 - 1);
        CHECK(r.d_G == n * n / 4);
        CHECK(r.S_G == r.dim_gk + 0.25);
        CHECK(r.A_threshold == doctest::Approx(std::sqrt(r.rho_norm_sq) / r.S_G).epsilon(1e-15));
        CHECK(r.verdict == (r.A_threshold < r.adjoint_decay_rate));
        const auto back = ComparisonReport::from_json(r.to_json());
        CHECK(back.to_json() == r.to_json());
        CHECK(back.A_threshold == r.A_threshold);
        CHECK(back.csv_row() == r.csv_row());
        CHECK(r.csv_row().size() == ComparisonReport::csv_header().size());
    }
}
