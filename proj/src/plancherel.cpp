#include "symkit/plancherel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "symkit/error.hpp"
#include "symkit/special.hpp"

namespace symkit {

using std::numbers::pi;

const char* to_string(DensityMode m) {
    switch (m) {
        case DensityMode::automatic: return "automatic";
        case DensityMode::rank_one_closed_form: return "rank_one_closed_form";
        case DensityMode::complex_polynomial: return "complex_polynomial";
        case DensityMode::gk_product: return "gk_product";
    }
    return "automatic";
}

DensityMode parse_density_mode(const std::string& s) {
    if (s == "automatic" || s == "auto") return DensityMode::automatic;
    if (s == "rank_one_closed_form" || s == "closed") return DensityMode::rank_one_closed_form;
    if (s == "complex_polynomial" || s == "polynomial") return DensityMode::complex_polynomial;
    if (s == "gk_product" || s == "gk") return DensityMode::gk_product;
    throw CapabilityError("unknown density mode '" + s + "'");
}

namespace {

bool has_double(const SymmetricSpace& space, int i, int* m2 = nullptr) {
    const Vec twice = 2.0 * space.roots()[i].vector;
    for (const auto& r : space.roots())
        if ((r.vector - twice).norm() < 1e-10 * (1.0 + twice.norm())) {
            if (m2) *m2 = r.multiplicity;
            return true;
        }
    return false;
}

bool closed_form_ok(const SymmetricSpace& space) {
    return space.rank() == 1 && space.roots().size() == 1;
}

bool polynomial_ok(const SymmetricSpace& space) {
    for (const auto& r : space.roots())
        if (r.multiplicity != 2 || !r.indivisible) return false;
    for (int i = 0; i < static_cast<int>(space.roots().size()); ++i)
        if (has_double(space, i)) return false;
    return true;
}

// Root data entering one Gindikin-Karpelevich factor.
struct GkFactor {
    int m = 1, m2 = 0;
    double alpha_sq = 1.0;  // <alpha, alpha>
    double rho_alpha = 0.0;  // <rho, alpha> / <alpha, alpha>
    double log_norm = 0.0;   // log c_alpha,raw(-i rho), real and finite
    Vec alpha;
};

std::vector<GkFactor> gk_factors(const SymmetricSpace& space) {
    std::vector<GkFactor> out;
    for (int i = 0; i < static_cast<int>(space.roots().size()); ++i) {
        const auto& r = space.roots()[i];
        if (!r.indivisible) continue;
        GkFactor f;
        f.m = r.multiplicity;
        has_double(space, i, &f.m2);
        f.alpha = r.vector;
        f.alpha_sq = space.dual_inner(r.vector, r.vector);
        f.rho_alpha = space.dual_inner(space.rho(), r.vector) / f.alpha_sq;
        const double a = 0.5 * (0.5 * f.m + 1.0), b = 0.5 * (0.5 * f.m + f.m2);
        f.log_norm = -f.rho_alpha * std::log(2.0) + std::lgamma(f.rho_alpha) -
                     std::lgamma(a + 0.5 * f.rho_alpha) - std::lgamma(b + 0.5 * f.rho_alpha);
        out.push_back(f);
    }
    return out;
}

double log_density_gk(const SymmetricSpace& space, const std::vector<GkFactor>& factors,
                      const SpectralParameter& lambda) {
    double total = 0.0;
    for (const auto& f : factors) {
        const double y = space.dual_inner(lambda, f.alpha) / f.alpha_sq;
        if (y == 0.0) return -std::numeric_limits<double>::infinity();
        const double a = 0.5 * (0.5 * f.m + 1.0), b = 0.5 * (0.5 * f.m + f.m2);
        // log|Gamma(iy)| through Gamma(1 + iy) / (iy), which has no pole at y = 0.
        // The pi |y| / 2 parts of the three shifted terms cancel exactly.
        const double lg_iy = special::log_abs_gamma_shifted(1.0, y) - std::log(std::abs(y));
        const double lg_a = special::log_abs_gamma_shifted(a, 0.5 * y);
        const double lg_b = special::log_abs_gamma_shifted(b, 0.5 * y);
        total += -2.0 * (lg_iy - lg_a - lg_b) + 2.0 * f.log_norm;
    }
    return total;
}

double log_rank_one_density(int m, double y) {
    y = std::abs(y);
    if (y == 0.0) return -std::numeric_limits<double>::infinity();
    const int k = m / 2;
    const double prefactor = 2.0 * (std::lgamma(0.5 * m) - std::lgamma(static_cast<double>(m)));
    double total = prefactor;
    if (m % 2 == 0) {
        // |Gamma(k + iy) / Gamma(iy)|^2 = prod_{j<k} (j^2 + y^2)
        for (int j = 0; j < k; ++j) total += log_casimir_symbol_radial(double(j * j), y);
    } else {
        total += std::log(y) + std::log(std::tanh(pi * y));
        for (int j = 0; j < k; ++j) total += log_casimir_symbol_radial((j + 0.5) * (j + 0.5), y);
    }
    return total;
}

double log_density_closed(const SymmetricSpace& space, const SpectralParameter& lambda) {
    const auto& r = space.roots()[0];
    const double y = space.dual_inner(lambda, r.vector) / space.dual_inner(r.vector, r.vector);
    return log_rank_one_density(r.multiplicity, y);
}

double log_density_polynomial(const SymmetricSpace& space, const SpectralParameter& lambda) {
    double total = 0.0;
    for (const auto& r : space.roots()) {
        const double num = space.dual_inner(lambda, r.vector);
        if (num == 0.0) return -std::numeric_limits<double>::infinity();
        total += 2.0 * (std::log(std::abs(num)) - std::log(space.dual_inner(space.rho(), r.vector)));
    }
    return total;
}

}  // namespace

DensityMode resolve_mode(const SymmetricSpace& space, DensityMode requested) {
    switch (requested) {
        case DensityMode::automatic:
            if (space.family() == Family::hyperbolic) return DensityMode::rank_one_closed_form;
            if (space.family() == Family::complex_sl_n) return DensityMode::complex_polynomial;
            return DensityMode::gk_product;
        case DensityMode::rank_one_closed_form:
            if (!closed_form_ok(space))
                throw CapabilityError("closed-form density needs rank one without a 2 alpha root");
            return requested;
        case DensityMode::complex_polynomial:
            if (!polynomial_ok(space))
                throw CapabilityError("polynomial density needs all multiplicities 2 (complex case)");
            return requested;
        case DensityMode::gk_product: return requested;
    }
    return DensityMode::gk_product;
}

double rank_one_density(int m, double y) {
    if (m < 1) throw DomainError("multiplicity must be positive");
    const double l = log_rank_one_density(m, y);
    return std::isinf(l) ? 0.0 : std::exp(l);
}

CValue c_function(const SymmetricSpace& space, const SpectralParameter& lambda) {
    space.check_dim(lambda, "lambda");
    CValue out;
    std::complex<double> log_c = 0.0;
    const std::complex<double> I(0.0, 1.0);
    for (const auto& f : gk_factors(space)) {
        const double y = space.dual_inner(lambda, f.alpha) / f.alpha_sq;
        if (y == 0.0) {
            out.pole = true;
            out.value = {std::numeric_limits<double>::infinity(), 0.0};
            return out;
        }
        const double a = 0.5 * (0.5 * f.m + 1.0), b = 0.5 * (0.5 * f.m + f.m2);
        const std::complex<double> iy = I * y;
        log_c += -iy * std::log(2.0) + special::log_gamma(1.0 + iy) - std::log(iy) -
                 special::log_gamma(a + 0.5 * iy) - special::log_gamma(b + 0.5 * iy) - f.log_norm;
    }
    out.value = std::exp(log_c);
    return out;
}

struct DensityEvaluator::Impl {
    std::vector<GkFactor> factors;
};

DensityEvaluator::DensityEvaluator(const SymmetricSpace& space, DensityMode mode)
    : space_(&space), mode_(resolve_mode(space, mode)) {
    auto impl = std::make_shared<Impl>();
    if (mode_ == DensityMode::gk_product) impl->factors = gk_factors(space);
    impl_ = std::move(impl);
}

double DensityEvaluator::log_density(const SpectralParameter& lambda) const {
    space_->check_dim(lambda, "lambda");
    switch (mode_) {
        case DensityMode::rank_one_closed_form: return log_density_closed(*space_, lambda);
        case DensityMode::complex_polynomial: return log_density_polynomial(*space_, lambda);
        default: return log_density_gk(*space_, impl_->factors, lambda);
    }
}

double log_plancherel_density(const SymmetricSpace& space, const SpectralParameter& lambda,
                              DensityMode mode) {
    return DensityEvaluator(space, mode).log_density(lambda);
}

DensityValue plancherel_density_eval(const SymmetricSpace& space, const SpectralParameter& lambda,
                                     DensityMode mode) {
    DensityValue d;
    d.mode = resolve_mode(space, mode);
    const double l = log_plancherel_density(space, lambda, d.mode);
    if (std::isinf(l) && l < 0) {
        d.removable_limit = true;
        d.value = 0.0;
    } else {
        d.value = std::exp(l);
    }
    return d;
}

double plancherel_density(const SymmetricSpace& space, const SpectralParameter& lambda,
                          DensityMode mode) {
    return plancherel_density_eval(space, lambda, mode).value;
}

double casimir_symbol(const SymmetricSpace& space, const SpectralParameter& lambda) {
    return space.rho_norm_sq() + space.dual_inner(lambda, lambda);
}

double bgr_symbol(const SymmetricSpace& space, const SpectralParameter& lambda, double s) {
    if (!(s > 0.0)) throw PreconditionError("bgr symbol needs s > 0");
    return std::pow(casimir_symbol(space, lambda), -s);
}

double heat_symbol(const SymmetricSpace& space, const SpectralParameter& lambda, double t) {
    if (!(t > 0.0)) throw PreconditionError("heat symbol needs t > 0");
    return std::exp(-t * casimir_symbol(space, lambda));
}

double log_casimir_symbol_radial(double rho_sq, double r) {
    r = std::abs(r);
    if (r < 1e100) return std::log(rho_sq + r * r);
    return 2.0 * std::log(r) + std::log1p(rho_sq / r / r);
}

const char* to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::casimir: return "casimir";
        case SymbolKind::bgr: return "bgr";
        case SymbolKind::heat: return "heat";
        case SymbolKind::custom: return "custom";
    }
    return "custom";
}

SpectralSymbol SpectralSymbol::casimir() { return {SymbolKind::casimir, 1.0, {}}; }
SpectralSymbol SpectralSymbol::bgr(double s) {
    if (!(s > 0.0)) throw PreconditionError("bgr symbol needs s > 0");
    return {SymbolKind::bgr, s, {}};
}
SpectralSymbol SpectralSymbol::heat(double t) {
    if (!(t > 0.0)) throw PreconditionError("heat symbol needs t > 0");
    return {SymbolKind::heat, t, {}};
}

double SpectralSymbol::log_value(const SymmetricSpace& space, double r) const {
    const double rho_sq = space.rho_norm_sq();
    switch (kind) {
        case SymbolKind::casimir: return log_casimir_symbol_radial(rho_sq, r);
        case SymbolKind::bgr: return -parameter * log_casimir_symbol_radial(rho_sq, r);
        case SymbolKind::heat: return -parameter * (rho_sq + r * r);
        case SymbolKind::custom:
            if (!log_radial) throw PreconditionError("custom symbol without an evaluator");
            return log_radial(r);
    }
    return 0.0;
}

double SpectralSymbol::value(const SymmetricSpace& space, const SpectralParameter& lambda) const {
    return std::exp(log_value(space, space.dual_norm(lambda)));
}

SpectralParameter SpectralFrame::point(double r, double theta) const {
    if (rank == 1) return r * basis.col(0);
    Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    return r * (basis * u);
}

SpectralFrame spectral_frame(const SymmetricSpace& space) {
    SpectralFrame f;
    f.rank = space.rank();
    if (f.rank > 2)
        throw CapabilityError("spectral integrals are implemented for rank <= 2");
    // B = G^{1/2}, so that B^T G^{-1} B = I.
    Eigen::SelfAdjointEigenSolver<Mat> eig(space.gram());
    f.basis = eig.operatorSqrt();
    if (f.rank == 1) {
        // orient along the positive root
        if (space.roots()[0].vector[0] * f.basis(0, 0) < 0) f.basis *= -1.0;
        return f;
    }
    // Chamber {u : u . n_i >= 0} with n_i = B G^{-1} a_i for the simple roots.
    const auto& sr = space.simple_roots();
    const Vec n1 = f.basis * (space.gram_inverse() * space.roots()[sr[0]].vector);
    const Vec n2 = f.basis * (space.gram_inverse() * space.roots()[sr[1]].vector);
    const double p1 = std::atan2(n1[1], n1[0]);
    double p2 = std::atan2(n2[1], n2[0]);
    while (p2 - p1 > pi) p2 -= 2.0 * pi;
    while (p2 - p1 <= -pi) p2 += 2.0 * pi;
    f.theta_min = std::max(p1, p2) - 0.5 * pi;
    f.theta_max = std::min(p1, p2) + 0.5 * pi;
    return f;
}

namespace {

// log of r^{rank-1} times the angular density integral, safe for huge r.
double log_radial_density(const SymmetricSpace& space, const SpectralFrame& frame, double r,
                          const DensityEvaluator& density, const QuadratureSpec& quad) {
    if (!(r > 0.0)) return -std::numeric_limits<double>::infinity();
    if (frame.rank == 1) return density.log_density(frame.point(r, 0.0));
    const double scale = space.dim_n() * std::log(r);
    auto g = [&](double th) {
        const double l = density.log_density(frame.point(r, th));
        return std::isinf(l) ? 0.0 : std::exp(l - scale);
    };
    // The angular rule runs well below the outer tolerance so that its noise
    // does not stall the radial refinement.
    const double rel = std::max(1e-13, 0.01 * quad.rel_tol);
    // Odd multiplicities give tanh layers of width ~1/r at the walls, narrow
    // enough to fall between the nodes of a single panel; split geometrically.
    std::vector<double> breaks = {frame.theta_min};
    const double quarter = 0.25 * (frame.theta_max - frame.theta_min);
    std::vector<double> offsets;
    for (double d = 0.125 / r; d < quarter; d *= 2.0) offsets.push_back(d);
    for (double d : offsets) breaks.push_back(frame.theta_min + d);
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) breaks.push_back(frame.theta_max - *it);
    breaks.push_back(frame.theta_max);
    const auto res = integrate_gk(g, breaks, 1e-300, rel, quad.max_intervals);
    if (!(res.value > 0.0)) return -std::numeric_limits<double>::infinity();
    return scale + std::log(res.value) + std::log(r);
}

}  // namespace

double angular_density(const SymmetricSpace& space, const SpectralFrame& frame, double r,
                       DensityMode mode, const QuadratureSpec& quad) {
    const double l = log_radial_density(space, frame, r, DensityEvaluator(space, mode), quad);
    if (std::isinf(l)) return 0.0;
    return frame.rank == 1 ? std::exp(l) : std::exp(l) / r;
}

nlohmann::ordered_json SpectralIntegral::diagnostics() const {
    nlohmann::ordered_json j;
    j["finite"] = finite;
    j["verdict"] = to_string(verdict);
    j["density_mode"] = to_string(mode);
    j["cutoff"] = cutoff;
    j["tail"] = tail;
    j["tail_geometric"] = tail_geometric;
    j["error"] = error;
    j["core_converged"] = core_converged;
    j["tail_converged"] = tail_converged;
    j["shell_edges"] = shell_edges;
    j["increments"] = increments;
    j["ratios"] = ratios;
    return j;
}

SpectralIntegral spectral_integral(const SymmetricSpace& space, const SpectralSymbol& symbol,
                                   const QuadratureSpec& quad, DensityMode mode) {
    quad.validate();
    SpectralIntegral out;
    out.mode = resolve_mode(space, mode);
    const SpectralFrame frame = spectral_frame(space);
    const DensityEvaluator density(space, out.mode);
    auto log_f = [&](double r) {
        return symbol.log_value(space, r) + log_radial_density(space, frame, r, density, quad);
    };
    auto f = [&](double r) {
        const double l = log_f(r);
        return std::isinf(l) && l < 0 ? 0.0 : std::exp(l);
    };

    // Dyadic shell trace [0,1], [1,2], ..., [2^{K-1}, 2^K].
    constexpr int kShells = 40;
    out.shell_edges.push_back(0.0);
    for (int k = 0; k <= kShells; ++k) out.shell_edges.push_back(std::ldexp(1.0, k));
    double trace_err = 0.0;
    for (std::size_t k = 0; k + 1 < out.shell_edges.size(); ++k) {
        const auto r = integrate_gk(f, out.shell_edges[k], out.shell_edges[k + 1], 1e-300,
                                    quad.rel_tol, quad.max_intervals);
        if (!r.converged && !(r.error <= 1e-8 * std::abs(r.value)))
            throw ToleranceError("spectral shell integral did not converge",
                                 "shell [" + std::to_string(out.shell_edges[k]) + ", " +
                                     std::to_string(out.shell_edges[k + 1]) + "]");
        out.increments.push_back(r.value);
        trace_err += r.error;
    }
    // The first shells carry the low-frequency structure; grow only on [1, inf).
    std::vector<double> far(out.increments.begin() + 1, out.increments.end());
    out.ratios = increment_ratios(far);
    out.verdict = classify_increments(far, 6);
    if (out.verdict == Growth::diverging) return out;
    if (out.verdict == Growth::inconclusive)
        throw ToleranceError("spectral integral neither converges nor diverges geometrically",
                             out.diagnostics().dump());

    const double q = out.ratios.back();
    out.tail_geometric = far.back() * q / (1.0 - q);

    // Value: Gauss-Kronrod core on [0, 64] with dyadic breaks, mapped tail beyond.
    out.cutoff = 64.0;
    std::vector<double> breaks = {0.0};
    for (double e = 1.0; e <= out.cutoff; e *= 2.0) breaks.push_back(e);
    const auto core = integrate_gk(f, breaks, quad.abs_tol, quad.rel_tol, quad.max_intervals);
    const double L = out.cutoff;
    auto mapped = [&](double u) {
        const double x = L / u;
        if (!std::isfinite(x)) return 0.0;
        const double l = log_f(x) + std::log(L) - 2.0 * std::log(u);
        return std::isinf(l) && l < 0 ? 0.0 : std::exp(l);
    };
    const auto tail = integrate_tanh_sinh(mapped, 0.0, 1.0, quad.abs_tol, quad.rel_tol, quad.max_depth);
    out.tail = tail.value;
    out.value = core.value + tail.value;
    out.error = core.error + tail.error;
    out.core_converged = core.converged;
    out.tail_converged = tail.converged;
    if (!core.converged || !tail.converged || !std::isfinite(out.value))
        throw ToleranceError("spectral integral did not reach tolerance", out.diagnostics().dump());
    out.finite = true;
    return out;
}

double SpectralNorm::value() const {
    if (!integral.finite) throw DivergenceError("spectral L2 norm diverges");
    return std::sqrt(integral.value);
}

SpectralNorm casimir_inverse_l2_norm(const SymmetricSpace& space, double s,
                                     const QuadratureSpec& quad, DensityMode mode) {
    if (!(s > 0.0)) throw PreconditionError("casimir_inverse_l2_norm needs s > 0");
    SpectralNorm n;
    n.integral = spectral_integral(space, SpectralSymbol::bgr(2.0 * s), quad, mode);
    return n;
}

std::vector<DensityRow> density_table(const SymmetricSpace& space, const std::vector<double>& radii,
                                      DensityMode mode, const SpectralParameter* direction) {
    Vec dir = direction ? *direction : space.rho();
    space.check_dim(dir, "direction");
    const double nrm = space.dual_norm(dir);
    if (!(nrm > 0.0)) throw DomainError("direction must be nonzero");
    dir /= nrm;
    std::vector<DensityRow> rows;
    rows.reserve(radii.size());
    const DensityEvaluator density(space, mode);
    for (double r : radii) rows.push_back({r, density(r * dir)});
    return rows;
}

}  // namespace symkit
