#include "symkit/multiplier.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "symkit/kernels.hpp"
#include "symkit/plancherel.hpp"
#include "symkit/special.hpp"

namespace symkit {

using std::numbers::pi;

void check_sobolev_exponents(int dim_gk, double S_G, double s) {
    if (dim_gk < 1) throw PreconditionError("dim(G/K) must be positive");
    if (!(S_G > 0.25 * dim_gk) || !std::isfinite(S_G))
        throw PreconditionError("S_G must exceed dim(G/K)/4 = " + std::to_string(0.25 * dim_gk));
    if (!(s > 0.0) || !(s <= S_G)) throw PreconditionError("s must lie in (0, S_G]");
}

static void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw PreconditionError("p must lie in (1, inf)");
}

bool admissible(int dim_gk, double S_G, double s, double p) {
    check_sobolev_exponents(dim_gk, S_G, s);
    check_p(p);
    return std::abs(1.0 / p - 0.5) < s / (2.0 * S_G);
}

PInterval p_interval(double S_G, double s) {
    if (!(S_G > 0.0) || !(s > 0.0) || !(s <= S_G)) throw PreconditionError("p_interval needs 0 < s <= S_G");
    PInterval out;
    out.p_min = 2.0 * S_G / (S_G + s);
    out.p_max = s == S_G ? std::numeric_limits<double>::infinity() : 2.0 * S_G / (S_G - s);
    return out;
}

double l2_sobolev_bound(const SymmetricSpace& space, double S_G, double sobolev_norm, const QuadratureSpec& quad) {
    check_sobolev_exponents(space.dim_gk(), S_G, S_G);
    if (!(sobolev_norm >= 0.0) || !std::isfinite(sobolev_norm))
        throw PreconditionError("sobolev_norm must be finite and nonnegative");
    const SpectralNorm n = casimir_inverse_l2_norm(space, S_G, quad);
    return 2.0 * sobolev_norm * n.value();
}

namespace {

// sin(pi b)/2 / (cosh(pi t) - sign cos(pi b)) for t >= 0, without cancellation
// near the pole and without overflow for large t.
double cosh_kernel(double t, double beta, int sign) {
    const double half = 0.5 * std::sin(pi * beta);
    if (t < 1.0) {
        const double sh = std::sinh(0.5 * pi * t);
        const double tr = sign > 0 ? std::sin(0.5 * pi * beta) : std::cos(0.5 * pi * beta);
        return half / (2.0 * (sh * sh + tr * tr));
    }
    const double e = std::exp(-pi * t);
    const double c = sign * std::cos(pi * beta);
    return half * 2.0 * e / (1.0 - 2.0 * c * e + e * e);
}

double log_cosh_kernel(double t, double beta, int sign) {
    if (t < 1.0) return std::log(cosh_kernel(t, beta, sign));
    const double e = std::exp(-pi * t);
    const double c = sign * std::cos(pi * beta);
    return std::log(std::sin(pi * beta)) - pi * t - std::log1p(e * (e - 2.0 * c));
}

// kernel(t) * log A(t); the exp(a|t|) part is combined with the kernel in log form.
double weighted_log_profile(double t, double beta, int sign, const BoundaryProfile& A) {
    BoundaryProfile slow = A;
    slow.exp_coefficient = 0.0;
    double v = cosh_kernel(t, beta, sign) * slow.log_value(t);
    if (A.exp_coefficient != 0.0)
        v += A.exp_coefficient * std::exp(log_cosh_kernel(t, beta, sign) + A.exp_rate * std::abs(t));
    return v;
}

// Breakpoints resolving a Lorentzian peak of width ~w at t = 0.
std::vector<double> peak_breaks(double w) {
    std::vector<double> b = {0.0};
    for (double x = 0.125 * w; x < 1.0; x *= 2.0) b.push_back(x);
    for (double x = 1.0; x <= 64.0; x *= 2.0) b.push_back(x);
    return b;
}

struct EvenIntegral {
    double value = 0.0, error = 0.0;
};

// 2 int_0^inf f(t) dt for an even integrand decaying like e^{-(pi - a) t}.
EvenIntegral even_line_integral(const ScalarFn& f, double width, const QuadratureSpec& quad) {
    const double rel = std::max(1e-13, 0.1 * quad.rel_tol);
    const auto core = integrate_gk(f, peak_breaks(width), quad.abs_tol, rel, quad.max_intervals);
    const auto tail = integrate_semi_infinite(f, 64.0, 64.0, quad.abs_tol, rel, quad.max_intervals, quad.max_depth);
    if (!core.converged || !tail.converged())
        throw ToleranceError("three lines quadrature did not reach the requested tolerance");
    return {2.0 * (core.value + tail.value()), 2.0 * (core.error + tail.error())};
}

void check_beta(double beta) {
    if (!(beta > 0.0) || !(beta < 1.0)) throw PreconditionError("beta must lie in (0, 1)");
}

}  // namespace

ThreeLinesWeights three_lines_weights(double beta, const QuadratureSpec& quad) {
    check_beta(beta);
    quad.validate();
    ThreeLinesWeights w;
    const auto a = even_line_integral([beta](double t) { return cosh_kernel(t, beta, +1); }, beta, quad);
    const auto b = even_line_integral([beta](double t) { return cosh_kernel(t, beta, -1); }, 1.0 - beta, quad);
    w.w0 = a.value;
    w.error0 = a.error;
    w.w1 = b.value;
    w.error1 = b.error;
    return w;
}

double cowling_growth(double t, double exponent) {
    if (!(exponent >= 0.0) || !(exponent <= 0.5)) throw PreconditionError("growth exponent must lie in [0, 1/2]");
    return std::exp(exponent * special::log_cowling_base(t));
}

BoundaryProfile BoundaryProfile::constant(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("boundary profile constant must be positive");
    BoundaryProfile p;
    p.log_constant = std::log(a);
    return p;
}

BoundaryProfile BoundaryProfile::cowling(double a, double exponent) {
    BoundaryProfile p = constant(a);
    p.cowling_exponent = exponent;
    p.validate();
    return p;
}

void BoundaryProfile::validate() const {
    if (!std::isfinite(log_constant) || !std::isfinite(cowling_exponent) || !std::isfinite(exp_coefficient) ||
        !std::isfinite(exp_rate))
        throw PreconditionError("boundary profile parameters must be finite");
    if (exp_coefficient != 0.0 && !(exp_rate >= 0.0 && exp_rate < pi))
        throw PreconditionError("boundary profile grows like exp(exp(a|t|)) with a >= pi; "
                                "outside the three lines class");
}

double BoundaryProfile::log_value(double t) const {
    double v = log_constant;
    if (cowling_exponent != 0.0) v += cowling_exponent * special::log_cowling_base(t);
    if (exp_coefficient != 0.0) v += exp_coefficient * std::exp(exp_rate * std::abs(t));
    return v;
}

nlohmann::ordered_json BoundaryProfile::to_json() const {
    nlohmann::ordered_json j;
    j["log_constant"] = log_constant;
    j["cowling_exponent"] = cowling_exponent;
    j["exp_coefficient"] = exp_coefficient;
    j["exp_rate"] = exp_rate;
    return j;
}

double d_beta(double beta, const BoundaryProfile& A0, const BoundaryProfile& A1, const QuadratureSpec& quad) {
    A0.validate();
    A1.validate();
    if (beta == 0.0) return A0.log_value(0.0);
    if (beta == 1.0) return A1.log_value(0.0);
    check_beta(beta);
    quad.validate();
    // the two kernels peak at different widths, so integrate them separately
    const auto a = even_line_integral([&](double t) { return weighted_log_profile(t, beta, +1, A0); }, beta, quad);
    const auto b = even_line_integral([&](double t) { return weighted_log_profile(t, beta, -1, A1); }, 1.0 - beta, quad);
    return a.value + b.value;
}

nlohmann::ordered_json InterpolationPlan::to_json() const {
    nlohmann::ordered_json j;
    j["dim_gk"] = dim_gk;
    j["S_G"] = S_G;
    j["s"] = s;
    j["p"] = p;
    j["p_used"] = p_used;
    j["dual"] = dual;
    j["alpha_interval"] = {alpha_min, 1.0};
    j["alpha"] = alpha;
    j["theta"] = theta;
    j["p0"] = p0;
    j["p1"] = p1;
    j["s0"] = s0;
    j["s1"] = s1;
    j["q"] = q();
    j["q0"] = q_beta(0.0);
    j["q1"] = q_beta(1.0);
    return j;
}

InterpolationPlan interpolation_plan(int dim_gk, double S_G, double s, double p, std::optional<double> alpha) {
    if (!admissible(dim_gk, S_G, s, p))
        throw RegionError("(s, p) is outside the admissible region |1/p - 1/2| < s/(2 S_G)");
    InterpolationPlan plan;
    plan.dim_gk = dim_gk;
    plan.S_G = S_G;
    plan.s = s;
    plan.p = p;
    plan.dual = p > 2.0;
    plan.p_used = plan.dual ? p / (p - 1.0) : p;
    const double gap = 1.0 / plan.p_used - 0.5;
    plan.alpha_min = gap * 2.0 * S_G / s;
    if (!(plan.alpha_min < 1.0)) throw RegionError("feasible alpha interval is empty");
    plan.alpha = alpha ? *alpha : 0.5 * (plan.alpha_min + 1.0);
    if (!(plan.alpha > plan.alpha_min) || !(plan.alpha < 1.0))
        throw RegionError("alpha must lie in the feasible interval (" + std::to_string(plan.alpha_min) + ", 1)");
    plan.theta = gap * 2.0 / plan.alpha;
    plan.p0 = 2.0;
    plan.p1 = 2.0 / (plan.alpha + 1.0);
    plan.s1 = S_G;
    // theta = 0 (p = 2) leaves s0 = s
    plan.s0 = plan.theta == 0.0 ? s : (s - plan.theta * S_G) / (1.0 - plan.theta);
    return plan;
}

double d_beta_bound(const InterpolationPlan& plan, const BoundaryProfile& A0, const BoundaryProfile& A1,
                    const QuadratureSpec& quad) {
    return d_beta(plan.theta, A0, A1, quad);
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::computed: return "computed";
        case Provenance::placeholder: return "placeholder";
        case Provenance::user: return "user";
    }
    return "computed";
}

double ConstantBreakdown::product() const {
    double v = 1.0;
    for (const auto& f : factors) v *= f.value;
    return v;
}

bool ConstantBreakdown::has_placeholders() const {
    for (const auto& f : factors)
        if (f.provenance == Provenance::placeholder) return true;
    return false;
}

nlohmann::ordered_json ConstantBreakdown::to_json() const {
    nlohmann::ordered_json j;
    j["plan"] = plan.to_json();
    j["sobolev_norm_q"] = sobolev_norm_q;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : factors) {
        nlohmann::ordered_json e;
        e["name"] = f.name;
        e["value"] = f.value;
        e["base"] = f.base;
        e["exponent"] = f.exponent;
        e["provenance"] = to_string(f.provenance);
        e["proof_step"] = f.step;
        if (!f.note.empty()) e["note"] = f.note;
        arr.push_back(e);
    }
    j["factors"] = arr;
    j["has_placeholders"] = has_placeholders();
    j["bound"] = product();
    return j;
}

namespace {

Factor power_factor(std::string name, double base, double exponent, Provenance prov, std::string step,
                    std::string note = {}) {
    Factor f;
    f.name = std::move(name);
    f.base = base;
    f.exponent = exponent;
    f.value = exponent == 0.0 ? 1.0 : std::pow(base, exponent);
    f.provenance = prov;
    f.step = std::move(step);
    f.note = std::move(note);
    return f;
}

// ||kappa_{s0}||_{L^{q'}(G)} bounds ||Omega^{-s0}: L^q -> L^inf|| by Hoelder.
std::optional<double> kernel_norm_bound(const SymmetricSpace& space, double s0, double q0, const QuadratureSpec& quad) {
    if (!has_closed_heat_kernel(space)) return std::nullopt;
    const double qc = q0 / (q0 - 1.0);
    const LqNorm n = lq_norm_numeric(space, s0, qc, quad, LqMode::exact);
    if (!n.finite()) return std::nullopt;
    return std::pow(sphere_area(space.dim_gk()) * n.integral(), 1.0 / qc);
}

}  // namespace

ConstantBreakdown cgsp_estimate(const SymmetricSpace& space, double S_G, double s, double p, const UserConstants& user,
                                double sobolev_norm_q, const QuadratureSpec& quad) {
    if (!(sobolev_norm_q >= 0.0) || !std::isfinite(sobolev_norm_q))
        throw PreconditionError("sobolev_norm_q must be finite and nonnegative");
    quad.validate();
    ConstantBreakdown out;
    out.plan = interpolation_plan(space.dim_gk(), S_G, s, p, user.alpha);
    out.sobolev_norm_q = sobolev_norm_q;
    const InterpolationPlan& plan = out.plan;
    const double theta = plan.theta;
    double w0 = 1.0, w1 = 0.0;
    if (theta > 0.0) {
        const auto w = three_lines_weights(theta, quad);
        w0 = w.w0;
        w1 = w.w1;
    }
    const double q = plan.q(), q0 = plan.q_beta(0.0);

    // q0 line: C_0 C'_0 (1 + |t|^3 log^2|t|)^{|1/q0 - 1/2|} ||m_s||_q^{q/q0}
    if (user.c_beta) {
        out.factors.push_back(power_factor("C_beta", *user.c_beta, w0, Provenance::user, "1a"));
    } else if (auto c = kernel_norm_bound(space, plan.s0, q0, quad)) {
        out.factors.push_back(power_factor("C_beta", *c, w0, Provenance::computed, "1a",
                                           "upper bound ||kappa_{s0}||_{L^{q0'}} from the exact kernel"));
    } else {
        out.factors.push_back(power_factor("C_beta", 1.0, w0, Provenance::placeholder, "1a",
                                           "no kernel norm available for this space; supply --c-beta"));
    }
    if (user.c_prime_beta)
        out.factors.push_back(power_factor("C_prime_beta", *user.c_prime_beta, w0, Provenance::user, "1a"));
    else
        out.factors.push_back(power_factor("C_prime_beta", 1.0, w0, Provenance::placeholder, "1a",
                                           "imaginary-power constant has no stated value"));
    const double e0 = std::abs(1.0 / q0 - 0.5);
    const double log_growth =
        theta > 0.0 ? d_beta(theta, BoundaryProfile::cowling(1.0, e0), BoundaryProfile::constant(1.0), quad) : 0.0;
    out.factors.push_back(power_factor("imaginary_power_growth", std::exp(log_growth), 1.0, Provenance::computed,
                                       "1a/2", "exp of the q0-line weight integral of the growth profile"));

    // q1 line: 2 ||Omega^{-S_G}||_2 ||m_s||_q^{q/2}
    if (w1 > 0.0) {
        out.factors.push_back(
            power_factor("l2_sobolev_factor", l2_sobolev_bound(space, S_G, 1.0, quad), w1, Provenance::computed, "1c"));
    } else {
        out.factors.push_back(power_factor("l2_sobolev_factor", 1.0, 0.0, Provenance::computed, "1c",
                                           "theta = 0: the q1 line carries no weight"));
    }
    const double norm_exponent = w0 * q / q0 + w1 * q / 2.0;
    out.factors.push_back(power_factor("sobolev_norm_q", sobolev_norm_q, norm_exponent, Provenance::user, "2",
                                       "weighted exponent q/q0 (q0 line) + q/2 (q1 line)"));
    return out;
}

}  // namespace symkit
