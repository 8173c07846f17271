#include "symkit/examples.hpp"

#include <boost/math/interpolators/quintic_hermite.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "symkit/error.hpp"
#include "symkit/multiplier.hpp"

namespace symkit {

namespace {

using Spline = boost::math::interpolators::quintic_hermite<std::vector<double>>;

struct GluedProfile {
    double A, r0, c;
    std::shared_ptr<const Spline> spline;

    ProfileJet operator()(double r) const {
        if (r <= r0) return {c, 0.0, 0.0};
        if (r >= 1.0) {
            const double e = std::exp(-A * r);
            return {e, -A * e, A * A * e};
        }
        return transition(r);
    }
    ProfileJet transition(double r) const { return {(*spline)(r), spline->prime(r), spline->double_prime(r)}; }
};

}  // namespace

SlowDecaySymbol::SlowDecaySymbol(const SymmetricSpace& space, double A, Gluing gluing)
    : A_(A), gluing_(gluing) {
    if (!(A > 0.0) || !std::isfinite(A)) throw PreconditionError("decay rate A must be positive");
    if (!(gluing.r0 > 0.0) || !(gluing.r0 < 1.0))
        throw PreconditionError("gluing interval (r0, 1) needs 0 < r0 < 1");
    if (!(gluing.inner_value > 0.0) || !(gluing.inner_value <= 1.0))
        throw PreconditionError("inner value must lie in (0, 1]");
    const double e = std::exp(-A);
    auto spline = std::make_shared<const Spline>(std::vector<double>{gluing.r0, 1.0},
                                                 std::vector<double>{gluing.inner_value, e},
                                                 std::vector<double>{0.0, -A * e},
                                                 std::vector<double>{0.0, A * A * e});
    GluedProfile g{A, gluing.r0, gluing.inner_value, spline};
    for (int k = 0; k <= 400; ++k) {
        const double v = g(gluing.r0 + (1.0 - gluing.r0) * k / 400.0).v;
        if (!(v >= 0.0 && v <= 1.0))
            throw PreconditionError("gluing transition leaves [0, 1]; widen the interval (r0, 1)");
    }
    profile_ = g;
    transition_ = [g](double r) { return g.transition(r); };
    function_ = RadialFunction::norm_profile(space, g, Smoothness::c2);
}

ProfileJet SlowDecaySymbol::profile(double r) const {
    if (r < 0.0) throw DomainError("radius must be nonnegative");
    return profile_(r);
}

ProfileJet SlowDecaySymbol::transition(double r) const {
    if (r < gluing_.r0 || r > 1.0) throw DomainError("transition is defined on [r0, 1]");
    return transition_(r);
}

SlowDecaySymbol slow_decay_symbol(const SymmetricSpace& space, double A, Gluing gluing) {
    return SlowDecaySymbol(space, A, gluing);
}

const char* to_string(SgConvention c) {
    return c == SgConvention::full_dimension ? "full_dimension" : "quarter_dimension";
}

SgConvention parse_sg_convention(const std::string& s) {
    if (s == "full_dimension" || s == "full") return SgConvention::full_dimension;
    if (s == "quarter_dimension" || s == "quarter") return SgConvention::quarter_dimension;
    throw PreconditionError("unknown S_G convention '" + s + "' (full_dimension | quarter_dimension)");
}

std::string describe(SgConvention c) {
    return c == SgConvention::full_dimension ? "S_G > dim(G/K)" : "S_G > dim(G/K)/4";
}

void check_sg(int dim_gk, double S_G, SgConvention c) {
    const double bound = c == SgConvention::full_dimension ? dim_gk : 0.25 * dim_gk;
    if (!(S_G > bound) || !std::isfinite(S_G))
        throw PreconditionError("convention " + describe(c) + " requires S_G > " + std::to_string(bound));
}

nlohmann::ordered_json DecayThreshold::to_json() const {
    nlohmann::ordered_json j;
    j["A_threshold"] = value;
    j["S_G"] = S_G;
    j["rho_norm"] = rho_norm;
    j["convention"] = to_string(convention);
    j["convention_rule"] = describe(convention);
    return j;
}

DecayThreshold decay_threshold(const SymmetricSpace& space, double S_G, SgConvention convention) {
    check_sg(space.dim_gk(), S_G, convention);
    DecayThreshold t;
    t.S_G = S_G;
    t.rho_norm = space.rho_norm();
    t.value = t.rho_norm / S_G;
    t.convention = convention;
    return t;
}

double SobolevNorm::value() const {
    if (!finite()) throw DivergenceError("||D f||_{L^{2 S_G}} diverges: shell increments grow geometrically");
    return std::pow(integral, 1.0 / (2.0 * S_G));
}

nlohmann::ordered_json SobolevNorm::to_json() const {
    nlohmann::ordered_json j;
    j["S_G"] = S_G;
    j["A"] = A;
    j["convention"] = to_string(convention);
    j["verdict"] = to_string(verdict);
    j["finite"] = finite();
    j["ladder"] = ladder;
    j["partial"] = partial;
    j["shell_edges"] = shell_edges;
    j["increments"] = increments;
    j["ratios"] = ratios;
    if (finite()) {
        j["integral"] = integral;
        j["tail"] = tail;
        j["outer"] = outer;
        j["norm"] = value();
    }
    return j;
}

SobolevNorm symbol_sobolev_norm(const SymmetricSpace& space, const SlowDecaySymbol& f, double S_G,
                                const QuadratureSpec& quad, std::vector<double> ladder, SgConvention convention) {
    check_sg(space.dim_gk(), S_G, convention);
    quad.validate();
    if (space.rank() > 2) throw CapabilityError("Sobolev-norm quadrature is implemented for rank <= 2");
    if (f.space().to_json() != space.to_json()) throw DomainError("symbol belongs to a different space");
    if (ladder.size() < 2 || !std::is_sorted(ladder.begin(), ladder.end()) ||
        std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end() || !(ladder.front() > 1.0))
        throw PreconditionError("cutoff ladder must be strictly increasing with first rung > 1");

    SobolevNorm out;
    out.S_G = S_G;
    out.A = f.A();
    out.convention = convention;
    out.ladder = ladder;

    const double power = 2.0 * S_G;
    const ChamberFrame frame = chamber_frame(space);
    auto log_integrand = [&](const Vec& H) {
        const double d = std::abs(f.casimir(H));
        if (d == 0.0) return -std::numeric_limits<double>::infinity();
        return power * std::log(d) + log_delta_density(space, H);
    };
    auto shell = [&](double r) { return log_chamber_shell_density(frame, r, log_integrand, quad); };

    // inner pieces up to the first rung, then shells of width 2 with the rungs as extra breaks
    constexpr double kWidth = 2.0;
    std::vector<double> inner = {f.gluing().r0, 1.0};
    for (double r = 2.0; r < ladder.front(); r += kWidth) inner.push_back(r);
    inner.push_back(ladder.front());
    double running = 0.0;
    double gluing_part = 0.0;
    for (std::size_t i = 0; i + 1 < inner.size(); ++i) {
        const double v = radial_shell_integral(shell, inner[i], inner[i + 1], quad);
        if (i == 0) gluing_part = v;
        running += v;
    }
    out.partial.push_back(running);

    std::size_t rung = 1;
    out.shell_edges.push_back(ladder.front());
    for (double a = ladder.front(); a < ladder.back() - 1e-12; a += kWidth) {
        const double b = std::min(a + kWidth, ladder.back());
        double inc = 0.0, lo = a;
        while (rung < ladder.size() && ladder[rung] <= b + 1e-12) {
            inc += radial_shell_integral(shell, lo, ladder[rung], quad);
            lo = ladder[rung];
            out.partial.push_back(running + inc);
            ++rung;
        }
        if (lo < b) inc += radial_shell_integral(shell, lo, b, quad);
        running += inc;
        out.shell_edges.push_back(b);
        out.increments.push_back(inc);
    }
    // a short last shell would distort the geometric test
    if (out.shell_edges.size() >= 3) {
        const std::size_t n = out.shell_edges.size();
        if (out.shell_edges[n - 1] - out.shell_edges[n - 2] < kWidth - 1e-9) {
            out.increments.pop_back();
            out.shell_edges.pop_back();
        }
    }
    out.ratios = increment_ratios(out.increments);
    const bool overflow = std::any_of(out.increments.begin(), out.increments.end(), [](double v) { return std::isinf(v); });
    out.verdict = overflow ? Growth::diverging : classify_increments(out.increments, 6);
    if (out.verdict == Growth::inconclusive)
        throw ToleranceError("Sobolev-norm shells neither converge nor diverge geometrically", out.to_json().dump());
    if (out.verdict == Growth::converging) {
        const double q = out.ratios.back();
        out.tail = out.increments.back() * q / (1.0 - q);
        out.integral = running + out.tail;
        out.outer = out.integral - gluing_part;
    }
    return out;
}

nlohmann::ordered_json EnvelopeFit::to_json() const {
    nlohmann::ordered_json j;
    j["D"] = D;
    j["r_min"] = r_min;
    j["r_max"] = r_max;
    j["wall_margin"] = wall_margin;
    j["samples"] = samples;
    j["near_wall_samples"] = near_wall_samples;
    j["near_wall_max_ratio"] = near_wall_max_ratio;
    j["near_wall_status"] = "unverified";
    return j;
}

EnvelopeFit fit_casimir_envelope(const SlowDecaySymbol& f, double r_min, double r_max, double wall_margin,
                                 int radial_samples, int angular_samples) {
    if (!(r_min >= 1.0) || !(r_max > r_min)) throw PreconditionError("envelope range must satisfy 1 <= r_min < r_max");
    if (!(wall_margin > 0.0) || radial_samples < 2 || angular_samples < 1)
        throw PreconditionError("envelope fit needs a positive wall margin and samples");
    const SymmetricSpace& space = f.space();
    if (space.rank() > 2) throw CapabilityError("envelope fit is implemented for rank <= 2");
    const ChamberFrame frame = chamber_frame(space);
    EnvelopeFit out;
    out.r_min = r_min;
    out.r_max = r_max;
    out.wall_margin = wall_margin;
    for (int i = 0; i < radial_samples; ++i) {
        const double r = r_min + (r_max - r_min) * i / (radial_samples - 1);
        const int na = space.rank() == 1 ? 1 : angular_samples;
        for (int k = 0; k < na; ++k) {
            // open-interval nodes, never on a wall
            const double th = frame.theta_min + (frame.theta_max - frame.theta_min) * (k + 0.5) / na;
            const Vec H = frame.point(r, th);
            double closest = std::numeric_limits<double>::infinity();
            for (const auto& root : space.roots()) closest = std::min(closest, space.pairing(root.vector, H));
            const double ratio = std::abs(f.casimir(H)) * std::exp(f.A() * r);
            if (closest >= wall_margin * r) {
                out.D = std::max(out.D, ratio);
                ++out.samples;
            } else {
                out.near_wall_max_ratio = std::max(out.near_wall_max_ratio, ratio);
                ++out.near_wall_samples;
            }
        }
    }
    return out;
}

std::vector<ProfileRow> symbol_profile(const SlowDecaySymbol& f, const std::vector<double>& radii) {
    const SymmetricSpace& space = f.space();
    const Vec rv = space.rho_vector();
    const Vec u = rv / space.norm(rv);
    std::vector<ProfileRow> rows;
    rows.reserve(radii.size());
    for (double r : radii) {
        if (!(r > 0.0)) throw DomainError("profile radii must be positive");
        const Vec H = r * u;
        rows.push_back({r, f(H), f.casimir(H)});
    }
    return rows;
}

nlohmann::ordered_json ComparisonReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["dim_gk"] = dim_gk;
    j["rho_norm_sq"] = rho_norm_sq;
    j["rho_norm_sq_approx"] = rho_norm_sq_approx;
    j["convention"] = to_string(convention);
    j["convention_rule"] = describe(convention);
    j["margin"] = margin;
    j["S_G"] = S_G;
    j["A_threshold"] = A_threshold;
    j["d_G"] = d_G;
    j["adjoint_decay_rate"] = adjoint_decay_rate;
    j["p_interval_s1"] = {p_min, p_max};
    j["comparison_available"] = comparison_available;
    j["verdict"] = verdict;
    j["certificate"] = "finite Sobolev norm for A > A_threshold => the multiplier bound applies for |1/p - 1/2| < 1/(2 S_G)";
    return j;
}

ComparisonReport ComparisonReport::from_json(const nlohmann::json& j) {
    ComparisonReport r;
    r.n = j.at("n").get<int>();
    r.dim_gk = j.at("dim_gk").get<int>();
    r.rho_norm_sq = j.at("rho_norm_sq").get<double>();
    r.rho_norm_sq_approx = j.at("rho_norm_sq_approx").get<double>();
    r.convention = parse_sg_convention(j.at("convention").get<std::string>());
    r.margin = j.at("margin").get<double>();
    r.S_G = j.at("S_G").get<double>();
    r.A_threshold = j.at("A_threshold").get<double>();
    r.d_G = j.at("d_G").get<int>();
    r.adjoint_decay_rate = j.at("adjoint_decay_rate").get<double>();
    r.p_min = j.at("p_interval_s1").at(0).get<double>();
    r.p_max = j.at("p_interval_s1").at(1).get<double>();
    r.comparison_available = j.at("comparison_available").get<bool>();
    r.verdict = j.at("verdict").get<bool>();
    return r;
}

std::vector<std::string> ComparisonReport::csv_header() {
    return {"n", "dim", "rho2_exact", "rho2_approx", "A_threshold", "d_G", "adjoint_decay_rate", "p_min", "p_max",
            "verdict"};
}

std::vector<double> ComparisonReport::csv_row() const {
    return {static_cast<double>(n), static_cast<double>(dim_gk), rho_norm_sq, rho_norm_sq_approx, A_threshold,
            static_cast<double>(d_G), adjoint_decay_rate, p_min, p_max, verdict ? 1.0 : 0.0};
}

ComparisonReport slnr_report(int n, double margin) {
    if (n < 2) throw PreconditionError("slnr_report needs n >= 2");
    if (!(margin > 0.0) || !std::isfinite(margin)) throw PreconditionError("S_G margin must be positive");
    const SymmetricSpace space = SymmetricSpace::build(Family::sl_n_r, n, Normalization::killing);
    ComparisonReport r;
    r.n = n;
    r.dim_gk = space.dim_gk();
    r.rho_norm_sq = space.rho_norm_sq();
    r.rho_norm_sq_approx = n * (n + 3.0) / 6.0;
    r.convention = SgConvention::full_dimension;
    r.margin = margin;
    r.S_G = r.dim_gk + margin;
    r.A_threshold = decay_threshold(space, r.S_G, r.convention).value;
    r.d_G = n * n / 4;
    r.adjoint_decay_rate = r.d_G / (std::sqrt(2.0) * n);
    const PInterval iv = p_interval(r.S_G, 1.0);
    r.p_min = iv.p_min;
    r.p_max = iv.p_max;
    r.comparison_available = n >= 3;
    r.verdict = r.A_threshold < r.adjoint_decay_rate;
    return r;
}

}  // namespace symkit
