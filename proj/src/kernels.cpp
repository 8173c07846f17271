#include "symkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "symkit/error.hpp"
#include "symkit/plancherel.hpp"
#include "symkit/radial.hpp"
#include "symkit/special.hpp"

namespace symkit {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ninf = -std::numeric_limits<double>::infinity();

struct RankOne {
    int m = 0;
    double alpha_norm = 1.0;  // dual norm of the root
    Vec alpha;
    Vec direction;  // unit vector of the chamber
};

RankOne rank_one_data(const SymmetricSpace& space, const char* what) {
    if (space.rank() != 1) throw CapabilityError(std::string(what) + " is implemented in rank one");
    if (space.roots().size() != 1)
        throw CapabilityError(std::string(what) + " needs a reduced rank-one root system (no 2 alpha)");
    RankOne d;
    d.m = space.roots()[0].multiplicity;
    d.alpha = space.roots()[0].vector;
    d.alpha_norm = space.dual_norm(d.alpha);
    d.direction = rank_one_direction(space);
    return d;
}

void check_t_r(double t, double r) {
    if (!(t > 0.0) || !std::isfinite(t)) throw PreconditionError("heat kernel needs t > 0");
    if (!(r >= 0.0) || !std::isfinite(r)) throw PreconditionError("heat kernel needs r >= 0");
}

double log_sinhc(double x) {
    x = std::abs(x);
    if (x < 1.0) return std::log(special::sinhc(x));
    return special::log_sinh(x) - std::log(x);
}

// McKean's formula for the hyperbolic plane with s = r + v^2:
// k_t(r) = sqrt(2) e^{-t/4} (4 pi t)^{-3/2} int_r^inf s e^{-s^2/4t} (cosh s - cosh r)^{-1/2} ds.
double log_heat_h2(double t, double r) {
    const double base = 0.5 * std::log(2.0) - 0.25 * t - 1.5 * std::log(4.0 * pi * t) - r * r / (4.0 * t);
    // cosh(r + v^2) - cosh(r) = 2 sinh(r + v^2/2) sinh(v^2/2) = sinh(r + v^2/2) v^2 sinhc(v^2/2)
    const double ref = r > 0.0 ? -0.5 * special::log_sinh(std::max(r, 1e-300)) : 0.0;
    auto log_g = [&](double v) {
        const double v2 = v * v;
        const double log_den = 0.5 * (special::log_sinh(r + 0.5 * v2) + log_sinhc(0.5 * v2));
        // the v from the Jacobian cancels the v from sqrt(v^2)
        return std::log(2.0 * (r + v2)) - (2.0 * r * v2 + v2 * v2) / (4.0 * t) - log_den;
    };
    auto g = [&](double v) {
        if (v == 0.0 && r == 0.0) return 0.0;
        return std::exp(log_g(v) - ref);
    };
    const double vmax = std::sqrt(-r + std::sqrt(r * r + 400.0 * t)) + 1e-3;
    std::vector<double> breaks;
    for (int k = 0; k <= 16; ++k) breaks.push_back(vmax * k / 16.0);
    const auto res = integrate_gk(g, breaks, 1e-300, 1e-13, 20000);
    if (!res.converged && !(res.error <= 1e-10 * std::abs(res.value)))
        throw ToleranceError("hyperbolic plane heat kernel quadrature did not converge");
    return base + ref + std::log(res.value);
}

double log_heat_h3(double t, double r) {
    return -1.5 * std::log(4.0 * pi * t) - log_sinhc(r) - t - r * r / (4.0 * t);
}

// Spectral inversion integral with C_SF = 1 for a reduced rank-one space.
double spectral_heat(const SymmetricSpace& space, double t, double r, const QuadratureSpec& quad) {
    const RankOne d = rank_one_data(space, "spectral heat kernel");
    const double tau = t * d.alpha_norm * d.alpha_norm;
    const double a = r * d.alpha_norm;
    const double pref = d.alpha_norm * std::exp(-t * space.rho_norm_sq());
    const DensityEvaluator density(space);
    auto D = [&](double y) { return density(y * d.alpha); };
    const double ymax = std::sqrt((50.0 + d.m * std::log1p(50.0 / tau)) / tau) + 1.0;

    if (d.m == 2 && a >= 1e-3) {
        // |c|^{-2} = (y / rho_a)^2 continues to an entire function; integrate
        // D(y) e^{-tau y^2} e^{i y a} / (2 i y sinh a) along Im y = a / (2 tau).
        const double rho_a = space.dual_inner(space.rho(), d.alpha) / (d.alpha_norm * d.alpha_norm);
        const double kappa = a / (2.0 * tau);
        const std::complex<double> I(0.0, 1.0);
        const double log_sinh_a = special::log_sinh(a);
        auto F = [&](double mu) {
            const std::complex<double> y(mu, kappa);
            const std::complex<double> dens = (y / rho_a) * (y / rho_a);
            const std::complex<double> e = std::exp(-tau * y * y + I * y * a - log_sinh_a);
            return (dens * e / (2.0 * I * y)).real();
        };
        const double M = std::sqrt(60.0 / tau) + 1.0;
        std::vector<double> breaks;
        for (int k = -8; k <= 8; ++k) breaks.push_back(M * k / 8.0);
        const auto res = integrate_gk(F, breaks, quad.abs_tol * 1e-6, quad.rel_tol, quad.max_intervals);
        if (!res.converged) throw ToleranceError("shifted-contour heat integral did not converge");
        return pref * res.value;
    }

    auto g = [&](double y) {
        if (y == 0.0) return 0.0;
        return D(y) * std::exp(-tau * y * y) * spherical_function(d.m, y, a, quad);
    };
    std::vector<double> breaks = {0.0};
    const double step = a > 0.0 ? std::min(ymax / 4.0, std::max(0.25, pi / a)) : ymax / 4.0;
    for (double y = step; y < ymax; y += step) breaks.push_back(y);
    breaks.push_back(ymax);
    const auto res = integrate_gk(g, breaks, quad.abs_tol, quad.rel_tol, quad.max_intervals);
    if (!res.converged) throw ToleranceError("spectral heat integral did not converge");
    return pref * res.value;
}

}  // namespace

const char* to_string(HeatMode m) { return m == HeatMode::closed ? "closed" : "spectral"; }

HeatMode parse_heat_mode(const std::string& s) {
    if (s == "closed") return HeatMode::closed;
    if (s == "spectral") return HeatMode::spectral;
    throw PreconditionError("unknown heat kernel mode '" + s + "' (closed|spectral)");
}

bool has_closed_heat_kernel(const SymmetricSpace& space) {
    if (space.family() != Family::hyperbolic || (space.size() != 2 && space.size() != 3)) return false;
    // the Killing metric of hyperbolic 3-space already has curvature -1
    return space.normalization() == Normalization::unit_curvature || std::abs(space.metric_scale() - 1.0) < 1e-12;
}

double log_heat_kernel_closed(const SymmetricSpace& space, double t, double r) {
    check_t_r(t, r);
    if (!has_closed_heat_kernel(space))
        throw CapabilityError("closed heat kernels exist for hyperbolic_2/3 in unit curvature only");
    return space.size() == 3 ? log_heat_h3(t, r) : log_heat_h2(t, r);
}

double heat_kernel(const SymmetricSpace& space, double t, double r, HeatMode mode, const QuadratureSpec& quad) {
    check_t_r(t, r);
    quad.validate();
    if (mode == HeatMode::closed) return std::exp(log_heat_kernel_closed(space, t, r));
    return spectral_heat(space, t, r, quad);
}

double spherical_function(int m, double y, double a, const QuadratureSpec& quad) {
    if (m < 1) throw DomainError("multiplicity must be positive");
    a = std::abs(a);
    y = std::abs(y);
    if (a == 0.0) return 1.0;
    if (m == 2) {
        if (y == 0.0) return 1.0 / special::sinhc(a);
        return std::sin(y * a) / (y * std::sinh(a));
    }
    // phi = c_m int_0^pi X^{-m/2 - iy} sin^{m-1} t dt, X = cosh a - sinh a cos t
    //     = e^{-a} + 2 sinh a sin^2(t/2)
    const double cm = std::exp(std::lgamma(0.5 * (m + 1)) - 0.5 * std::log(pi) - std::lgamma(0.5 * m));
    const double sa = std::sinh(a), ea = std::exp(-a);
    auto f = [&](double th) {
        const double s2 = std::sin(0.5 * th);
        const double logX = std::log(ea + 2.0 * sa * s2 * s2);
        double w = std::exp(-0.5 * m * logX) * std::cos(y * logX);
        if (m > 1) w *= std::pow(std::sin(th), m - 1);
        return w;
    };
    // X^{-m/2} peaks in a layer of width ~e^{-a} around t = 0
    std::vector<double> breaks = {0.0};
    for (double th = std::max(1e-300, 0.5 * ea); th < 0.5 * pi; th *= 2.0) breaks.push_back(th);
    breaks.push_back(0.5 * pi);
    breaks.push_back(pi);
    const auto res = integrate_gk(f, breaks, 1e-300, std::max(1e-13, 0.1 * quad.rel_tol), quad.max_intervals);
    if (!res.converged && !(res.error <= 1e-9 * std::abs(res.value)))
        throw ToleranceError("spherical function quadrature did not converge");
    return cm * res.value;
}

double heat_normalization(const SymmetricSpace& space, const QuadratureSpec& quad, double t0, double r0) {
    const double closed = heat_kernel(space, t0, r0, HeatMode::closed, quad);
    const double spectral = heat_kernel(space, t0, r0, HeatMode::spectral, quad);
    return closed / spectral;
}

double sphere_area(int k) {
    if (k < 1) throw DomainError("sphere dimension must be positive");
    return 2.0 * std::exp(0.5 * k * std::log(pi) - std::lgamma(0.5 * k));
}

double heat_kernel_l1_mass(const SymmetricSpace& space, double t, const QuadratureSpec& quad) {
    if (!has_closed_heat_kernel(space))
        throw CapabilityError("unit-mass check uses the closed heat kernel (hyperbolic_2/3)");
    const int d = space.dim_gk();
    auto f = [&](double r) {
        if (r == 0.0) return 0.0;
        return std::exp(log_heat_kernel_closed(space, t, r) + (d - 1) * special::log_sinh(r));
    };
    const double rmax = 2.0 * t * (d - 1) + 2.0 * std::sqrt(4.0 * t * 60.0) + 5.0;
    std::vector<double> breaks;
    const int panels = static_cast<int>(std::ceil(rmax));
    for (int k = 0; k <= panels; ++k) breaks.push_back(rmax * k / panels);
    const auto res = integrate_gk(f, breaks, quad.abs_tol, quad.rel_tol, quad.max_intervals);
    if (!res.converged) throw ToleranceError("heat kernel mass quadrature did not converge");
    return sphere_area(d) * res.value;
}

double log_bgr_kernel(const SymmetricSpace& space, double s, double r, const QuadratureSpec& quad) {
    if (!(s > 0.0)) throw PreconditionError("BGR kernel needs s > 0");
    if (!(r >= 0.0) || !std::isfinite(r)) throw PreconditionError("BGR kernel needs r >= 0");
    quad.validate();
    const int dim = space.dim_gk();
    if (r == 0.0 && 2.0 * s <= dim)
        throw SingularityError("kappa_s is singular at the origin for 2s <= dim(G/K)");
    const bool closed = has_closed_heat_kernel(space);
    if (!closed) rank_one_data(space, "BGR kernel");
    auto log_k = [&](double t) {
        if (closed) return log_heat_kernel_closed(space, t, r);
        const double v = spectral_heat(space, t, r, quad);
        return v > 0.0 ? std::log(v) : ninf;
    };
    // L(u) = s u + log k_{e^u}(r), integrated over u = log t
    auto L = [&](double u) { return s * u + log_k(std::exp(u)); };

    const double window = quad.log_window;
    const double step = 1.0;
    double lo = (r > 0.0 ? 2.0 * std::log(r) : 0.0) - 10.0;
    double hi = std::max(5.0, std::log1p(r) + 5.0);
    std::vector<double> us, ls;
    for (double u = lo; u <= hi + 1e-12; u += step) {
        us.push_back(u);
        ls.push_back(L(u));
    }
    auto peak = [&] { return *std::max_element(ls.begin(), ls.end()); };
    // extend until both ends are `window` e-folds below the peak
    while (ls.front() > peak() - window) {
        if (us.front() < -2.0e4) throw ToleranceError("subordination integrand does not decay as t -> 0");
        const double u = us.front() - step;
        us.insert(us.begin(), u);
        ls.insert(ls.begin(), L(u));
    }
    while (ls.back() > peak() - window) {
        if (us.back() > 200.0) throw ToleranceError("subordination integrand does not decay as t -> inf");
        const double u = us.back() + step;
        us.push_back(u);
        ls.push_back(L(u));
    }
    const double lmax = peak();
    std::size_t i0 = 0, i1 = us.size() - 1;
    while (i0 + 1 < us.size() && ls[i0 + 1] < lmax - window) ++i0;
    while (i1 > 0 && ls[i1 - 1] < lmax - window) --i1;
    std::vector<double> breaks;
    for (std::size_t i = i0; i <= i1; i += 2) breaks.push_back(us[i]);
    if (breaks.back() < us[i1]) breaks.push_back(us[i1]);
    const double split = std::log(quad.split_t);
    if (split > breaks.front() && split < breaks.back()) {
        breaks.push_back(split);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    }
    auto f = [&](double u) { return std::exp(L(u) - lmax); };
    const auto res = integrate_gk(f, breaks, 1e-300, quad.rel_tol, quad.max_intervals);
    if (!res.converged && !(res.error <= 1e-9 * std::abs(res.value)))
        throw ToleranceError("subordination quadrature did not converge");
    return lmax + std::log(res.value) - std::lgamma(s);
}

double bgr_kernel(const SymmetricSpace& space, double s, double r, const QuadratureSpec& quad) {
    return std::exp(log_bgr_kernel(space, s, r, quad));
}

double AsymptoticBound::log_value(const SymmetricSpace& space, const Vec& H) const {
    space.check_dim(H, "H");
    const double n = space.norm(H);
    if (!(n >= 1.0 - 1e-12)) throw DomainError("the Anker-Ji bound is used for ||H|| >= 1 only");
    if (!space.in_closed_chamber(H, 1e-12 * n)) throw DomainError("H must lie in the closed chamber");
    double out = exponent() * std::log(n) - rho_norm * n - space.pairing(rho, H);
    for (const auto& a : indivisible_roots) out += std::log1p(std::max(0.0, space.pairing(a, H)));
    return out;
}

nlohmann::ordered_json AsymptoticBound::to_json() const {
    nlohmann::ordered_json j;
    j["s"] = s;
    j["rank"] = rank;
    j["indivisible_roots"] = indivisible;
    j["power"] = exponent();
    j["rho_norm"] = rho_norm;
    return j;
}

AsymptoticBound asymptotic_bound(const SymmetricSpace& space, double s) {
    if (!(s > 0.0)) throw PreconditionError("envelope needs s > 0");
    AsymptoticBound b;
    b.s = s;
    b.rank = space.rank();
    b.indivisible = space.root_system().indivisible_count();
    b.rho_norm = space.rho_norm();
    b.rho = space.rho();
    for (const auto& r : space.roots())
        if (r.indivisible) b.indivisible_roots.push_back(r.vector);
    return b;
}

double log_anker_ji_envelope(const SymmetricSpace& space, double s, const Vec& H) {
    return asymptotic_bound(space, s).log_value(space, H);
}

double anker_ji_envelope(const SymmetricSpace& space, double s, const Vec& H) {
    return std::exp(log_anker_ji_envelope(space, s, H));
}

double lq_threshold(int dim_gk, double s) {
    if (dim_gk < 2) throw PreconditionError("L^q criterion needs dim(G/K) >= 2");
    if (!(s > 0.0) || !(2.0 * s < dim_gk))
        throw PreconditionError("L^q criterion applies for 0 < 2s < dim(G/K); for L^2 use s > dim/4");
    return dim_gk / (dim_gk - 2.0 * s);
}

bool lq_admissible(int dim_gk, double s, double q) {
    const double thr = lq_threshold(dim_gk, s);
    if (!std::isfinite(q)) throw PreconditionError("q must be finite");
    return q > 1.0 && q < thr && q <= 2.0;
}

const char* to_string(LqMode m) {
    switch (m) {
        case LqMode::automatic: return "automatic";
        case LqMode::exact: return "exact";
        case LqMode::envelope: return "envelope";
    }
    return "automatic";
}

LqMode parse_lq_mode(const std::string& s) {
    if (s == "automatic" || s == "auto") return LqMode::automatic;
    if (s == "exact") return LqMode::exact;
    if (s == "envelope") return LqMode::envelope;
    throw PreconditionError("unknown L^q mode '" + s + "' (automatic|exact|envelope)");
}

nlohmann::ordered_json LqRegion::to_json() const {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(verdict);
    j["value"] = value;
    j["tail"] = tail;
    j["shell_edges"] = shell_edges;
    j["increments"] = increments;
    j["ratios"] = ratios;
    return j;
}

double LqNorm::norm() const {
    if (!finite()) throw DivergenceError("kappa_s is not in L^q: the integral diverges");
    return std::pow(integral(), 1.0 / q);
}

nlohmann::ordered_json LqNorm::to_json() const {
    nlohmann::ordered_json j;
    j["mode"] = to_string(mode);
    j["s"] = s;
    j["q"] = q;
    j["finite"] = finite();
    if (finite()) {
        j["integral"] = integral();
        j["norm"] = norm();
    }
    j["near_field"] = near.to_json();
    j["far_field"] = far.to_json();
    return j;
}

namespace {

void finish_region(LqRegion& reg) {
    reg.ratios = increment_ratios(reg.increments);
    for (double v : reg.increments)
        if (std::isinf(v)) {
            reg.verdict = Growth::diverging;
            return;
        }
    reg.verdict = classify_increments(reg.increments, 6);
    if (reg.verdict != Growth::converging) return;
    double sum = 0.0;
    for (double v : reg.increments) sum += v;
    const double q = reg.ratios.back();
    reg.tail = reg.increments.back() * q / (1.0 - q);
    reg.value = sum + reg.tail;
}

}  // namespace

LqNorm lq_norm_numeric(const SymmetricSpace& space, double s, double q, const QuadratureSpec& quad, LqMode mode) {
    if (!(s > 0.0)) throw PreconditionError("lq_norm_numeric needs s > 0");
    if (!(q > 0.0) || !std::isfinite(q)) throw PreconditionError("lq_norm_numeric needs 0 < q < inf");
    quad.validate();
    if (mode == LqMode::automatic) mode = has_closed_heat_kernel(space) ? LqMode::exact : LqMode::envelope;
    if (mode == LqMode::exact && !has_closed_heat_kernel(space))
        throw CapabilityError("exact-kernel L^q norms need hyperbolic_2/3 in unit curvature; use envelope mode");
    if (space.rank() > 2) throw CapabilityError("L^q norms are implemented for rank <= 2");

    LqNorm out;
    out.mode = mode;
    out.s = s;
    out.q = q;
    const int dim = space.dim_gk();
    const ChamberFrame frame = chamber_frame(space);
    const AsymptoticBound bound = asymptotic_bound(space, s);

    std::function<double(const Vec&)> log_near, log_far;
    if (mode == LqMode::exact) {
        auto log_kernel = [&space, s, q, quad](const Vec& H) {
            return q * log_bgr_kernel(space, s, space.norm(H), quad) + log_delta_density(space, H);
        };
        log_near = log_kernel;
        log_far = log_kernel;
    } else {
        log_near = [&space, s, q, dim](const Vec& H) {
            return q * (2.0 * s - dim) * std::log(space.norm(H)) + log_delta_density(space, H);
        };
        log_far = [&space, &bound, q](const Vec& H) {
            return q * bound.log_value(space, H) + log_delta_density(space, H);
        };
    }
    auto shell_near = [&](double r) { return log_chamber_shell_density(frame, r, log_near, quad); };
    auto shell_far = [&](double r) { return log_chamber_shell_density(frame, r, log_far, quad); };

    const int near_shells = mode == LqMode::exact ? 30 : 40;
    out.near.shell_edges.push_back(1.0);
    for (int k = 0; k < near_shells; ++k) {
        const double b = std::ldexp(1.0, -k), a = 0.5 * b;
        out.near.shell_edges.push_back(a);
        out.near.increments.push_back(radial_shell_integral(shell_near, a, b, quad));
    }
    finish_region(out.near);

    constexpr int kMinFar = 8, kMaxFar = 30;
    out.far.shell_edges.push_back(1.0);
    double sum = 0.0;
    for (int k = 0; k < kMaxFar; ++k) {
        const double a = std::ldexp(1.0, k), b = 2.0 * a;
        out.far.shell_edges.push_back(b);
        const double inc = radial_shell_integral(shell_far, a, b, quad);
        out.far.increments.push_back(inc);
        if (std::isinf(inc)) break;
        sum += inc;
        const auto& v = out.far.increments;
        const int n = static_cast<int>(v.size());
        if (n >= kMinFar) {
            bool falling = true;
            for (int i = n - 6; i < n; ++i) falling = falling && v[i] < v[i - 1];
            if (falling && v.back() <= 1e-17 * sum) break;
        }
    }
    finish_region(out.far);
    if (out.near.verdict == Growth::inconclusive || out.far.verdict == Growth::inconclusive)
        throw ToleranceError("L^q integral neither converges nor diverges geometrically", out.to_json().dump());
    return out;
}

std::vector<KernelRow> tabulate_heat(const SymmetricSpace& space, double t, const std::vector<double>& radii,
                                     HeatMode mode, const QuadratureSpec& quad) {
    std::vector<KernelRow> rows;
    rows.reserve(radii.size());
    for (double r : radii) rows.push_back({r, heat_kernel(space, t, r, mode, quad)});
    return rows;
}

std::vector<KernelRow> tabulate_bgr(const SymmetricSpace& space, double s, const std::vector<double>& radii,
                                    const QuadratureSpec& quad) {
    std::vector<KernelRow> rows;
    rows.reserve(radii.size());
    for (double r : radii) rows.push_back({r, bgr_kernel(space, s, r, quad)});
    return rows;
}

}  // namespace symkit
