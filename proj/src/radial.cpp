#include "symkit/radial.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "symkit/error.hpp"
#include "symkit/plancherel.hpp"

namespace symkit {

const char* to_string(Smoothness s) {
    switch (s) {
        case Smoothness::analytic: return "analytic";
        case Smoothness::c2: return "c2";
        case Smoothness::sampled: return "sampled";
        case Smoothness::derived: return "derived";
    }
    return "derived";
}

struct RadialFunction::GridData {
    double r0 = 0.0, h = 0.0, tol = 1e-6;
    std::size_t count = 0;
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline;

    double lo() const { return r0; }
    double hi() const { return r0 + h * static_cast<double>(count - 1); }

    // Centered differences of the interpolant at step d.
    ProfileJet differences(double r, double d) const {
        const double fm = spline(r - d), f0 = spline(r), fp = spline(r + d);
        return {f0, (fp - fm) / (2.0 * d), (fp - 2.0 * f0 + fm) / (d * d)};
    }

    ProfileJet eval(double r) const {
        if (r < lo() - 1e-12 * (1.0 + std::abs(lo())) || r > hi() + 1e-12 * (1.0 + std::abs(hi())))
            throw DomainError("grid function evaluated outside its sampled range");
        // one coarse step of margin on each side for the difference stencil
        const double d = h;
        if (r - d < lo() || r + d > hi())
            throw DomainError("grid function needs one grid step of interior margin");
        const ProfileJet coarse = differences(r, d);
        const ProfileJet fine = differences(r, 0.5 * d);
        auto close = [&](double a, double b) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); };
        if (!close(coarse.d1, fine.d1) || !close(coarse.d2, fine.d2))
            throw ResolutionError("grid too coarse: derivative changes under step refinement at r = " +
                                  std::to_string(r));
        return fine;
    }
};

RadialFunction RadialFunction::closed(const SymmetricSpace& space, JetFunction f, Smoothness smooth) {
    if (!f) throw PreconditionError("closed radial function without an expression");
    RadialFunction out;
    out.kind_ = Kind::closed;
    out.smooth_ = smooth;
    out.space_ = std::make_shared<const SymmetricSpace>(space);
    out.closed_ = std::move(f);
    out.origin_ = "closed";
    return out;
}

RadialFunction RadialFunction::norm_profile(const SymmetricSpace& space, Profile g, Smoothness smooth) {
    if (!g) throw PreconditionError("norm profile without an evaluator");
    RadialFunction out;
    out.kind_ = Kind::norm_profile;
    out.smooth_ = smooth;
    out.space_ = std::make_shared<const SymmetricSpace>(space);
    out.profile_ = std::move(g);
    out.origin_ = "norm_profile";
    return out;
}

RadialFunction RadialFunction::grid(const SymmetricSpace& space, double r0, double h,
                                    std::vector<double> values, double tol) {
    if (values.size() < 5) throw PreconditionError("grid function needs at least 5 samples");
    if (!(h > 0.0) || !(r0 >= 0.0)) throw PreconditionError("grid needs r0 >= 0 and h > 0");
    if (!(tol > 0.0)) throw PreconditionError("grid tolerance must be positive");
    for (double v : values)
        if (!std::isfinite(v)) throw PreconditionError("grid values must be finite");
    auto data = std::make_shared<GridData>();
    data->r0 = r0;
    data->h = h;
    data->tol = tol;
    data->count = values.size();
    data->spline = boost::math::interpolators::cardinal_cubic_b_spline<double>(values.begin(), values.end(), r0, h);
    RadialFunction out;
    out.kind_ = Kind::grid;
    out.smooth_ = Smoothness::sampled;
    out.space_ = std::make_shared<const SymmetricSpace>(space);
    out.grid_ = std::move(data);
    out.origin_ = "grid";
    return out;
}

RadialFunction RadialFunction::derived(const SymmetricSpace& space, std::function<double(const Vec&)> f,
                                       std::string origin) {
    RadialFunction out;
    out.kind_ = Kind::derived;
    out.smooth_ = Smoothness::derived;
    out.space_ = std::make_shared<const SymmetricSpace>(space);
    out.derived_ = std::move(f);
    out.origin_ = std::move(origin);
    return out;
}

double RadialFunction::grid_lo() const {
    if (!grid_) throw CapabilityError("not a grid function");
    return grid_->lo();
}

double RadialFunction::grid_hi() const {
    if (!grid_) throw CapabilityError("not a grid function");
    return grid_->hi();
}

double RadialFunction::operator()(const Vec& H) const {
    space_->check_dim(H, "H");
    if (!space_->in_closed_chamber(H, 1e-12 * (1.0 + space_->norm(H))))
        throw DomainError("radial functions are defined on the closed positive chamber");
    switch (kind_) {
        case Kind::closed: {
            std::vector<Jet> x;
            for (int i = 0; i < H.size(); ++i) x.emplace_back(H[i]);
            return closed_(x).v;
        }
        case Kind::norm_profile: return profile_(space_->norm(H)).v;
        case Kind::grid: {
            const double r = space_->norm(H);
            if (r < grid_->lo() || r > grid_->hi())
                throw DomainError("grid function evaluated outside its sampled range");
            return grid_->spline(r);
        }
        case Kind::derived: return derived_(H);
    }
    return 0.0;
}

Vec rank_one_direction(const SymmetricSpace& space) {
    if (space.rank() != 1) throw CapabilityError("radius parametrization needs rank one");
    Vec u = space.to_vector(space.roots()[0].vector);
    return u / space.norm(u);
}

double RadialFunction::at_radius(double r) const {
    if (r < 0.0) throw DomainError("radius must be nonnegative");
    return (*this)(r * rank_one_direction(*space_));
}

Jet norm_jet(const SymmetricSpace& space, const Vec& H) {
    const int n = static_cast<int>(H.size());
    std::vector<Jet> x;
    for (int i = 0; i < n; ++i) x.push_back(Jet::variable(H[i], i, n));
    const Mat& G = space.gram();
    Jet q(0.0, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (G(i, k) != 0.0) q += G(i, k) * x[i] * x[k];
    if (!(q.v > 0.0)) throw DomainError("||H|| is not differentiable at H = 0");
    return sqrt(q);
}

Jet RadialFunction::jet(const Vec& H) const {
    space_->check_dim(H, "H");
    const int n = static_cast<int>(H.size());
    switch (kind_) {
        case Kind::closed: {
            std::vector<Jet> x;
            for (int i = 0; i < n; ++i) x.push_back(Jet::variable(H[i], i, n));
            return closed_(x);
        }
        case Kind::norm_profile: {
            const Jet r = norm_jet(*space_, H);
            const ProfileJet g = profile_(r.v);
            return r.apply(g.v, g.d1, g.d2);
        }
        case Kind::grid: {
            const Jet r = norm_jet(*space_, H);
            const ProfileJet g = grid_->eval(r.v);
            return r.apply(g.v, g.d1, g.d2);
        }
        case Kind::derived:
            throw CapabilityError("derived radial functions carry values only; resample onto a grid to differentiate");
    }
    return Jet();
}

double radial_casimir_at(const RadialFunction& f, const Vec& H) {
    const SymmetricSpace& space = f.space();
    space.check_dim(H, "H");
    std::vector<double> a;
    for (const auto& root : space.roots()) {
        const double v = space.pairing(root.vector, H);
        if (!(v > 0.0)) throw DomainError("radial Casimir is evaluated on the open chamber only");
        a.push_back(v);
    }
    const Jet j = f.jet(H);
    const int n = space.rank();
    const Mat& Gi = space.gram_inverse();
    double lap = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) lap += Gi(i, k) * j.hess(i, k);
    double drift = 0.0;
    for (std::size_t r = 0; r < space.roots().size(); ++r) {
        const auto& root = space.roots()[r];
        const Vec A = space.to_vector(root.vector);
        double d = 0.0;
        for (int i = 0; i < n; ++i) d += j.grad(i) * A[i];
        drift += root.multiplicity * d / std::tanh(a[r]);
    }
    return -(lap + drift);
}

RadialFunction radial_casimir_apply(const SymmetricSpace& space, const RadialFunction& f) {
    if (!f.differentiable())
        throw CapabilityError("radial Casimir needs a differentiable function (closed, profile or grid)");
    if (f.space().to_json() != space.to_json())
        throw DomainError("radial function belongs to a different space");
    RadialFunction g = f;
    return RadialFunction::derived(
        space, [g](const Vec& H) { return radial_casimir_at(g, H); }, "radial_casimir(" + f.origin() + ")");
}

Vec ChamberFrame::point(double r, double theta) const {
    if (rank == 1) return r * basis.col(0);
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    return r * (basis * u);
}

ChamberFrame chamber_frame(const SymmetricSpace& space) {
    const SpectralFrame s = spectral_frame(space);
    ChamberFrame f;
    f.rank = s.rank;
    // H = G^{-1} lambda maps the dual chamber isometrically onto the chamber.
    f.basis = space.gram_inverse() * s.basis;
    f.theta_min = s.theta_min;
    f.theta_max = s.theta_max;
    return f;
}

double log_chamber_shell_density(const ChamberFrame& frame, double r,
                                 const std::function<double(const Vec&)>& log_f,
                                 const QuadratureSpec& quad) {
    const double ninf = -std::numeric_limits<double>::infinity();
    if (!(r > 0.0)) return ninf;
    if (frame.rank == 1) return log_f(frame.point(r, 0.0));
    // scale by the largest of a few interior samples to keep exp() in range
    double log_scale = ninf;
    for (int k = 1; k < 8; ++k) {
        const double th = frame.theta_min + (frame.theta_max - frame.theta_min) * k / 8.0;
        log_scale = std::max(log_scale, log_f(frame.point(r, th)));
    }
    if (std::isinf(log_scale)) log_scale = 0.0;
    auto g = [&](double th) {
        const double l = log_f(frame.point(r, th));
        return std::isinf(l) ? 0.0 : std::exp(l - log_scale);
    };
    std::vector<double> breaks = {frame.theta_min};
    const double quarter = 0.25 * (frame.theta_max - frame.theta_min);
    std::vector<double> offsets;
    for (double d = 0.125 / r; d < quarter; d *= 2.0) offsets.push_back(d);
    for (double d : offsets) breaks.push_back(frame.theta_min + d);
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) breaks.push_back(frame.theta_max - *it);
    breaks.push_back(frame.theta_max);
    const double rel = std::max(1e-13, 0.01 * quad.rel_tol);
    const auto res = integrate_gk(g, breaks, 1e-300, rel, quad.max_intervals);
    if (!(res.value > 0.0)) return ninf;
    return log_scale + std::log(res.value) + std::log(r);
}

double radial_shell_integral(const std::function<double(double)>& L, double a, double b, const QuadratureSpec& quad) {
    const double ref = std::max({L(a), L(0.5 * (a + b)), L(b)});
    if (std::isinf(ref) && ref < 0) return 0.0;
    if (!std::isfinite(ref)) return std::numeric_limits<double>::infinity();
    auto f = [&](double r) {
        const double l = L(r);
        return std::isinf(l) && l < 0 ? 0.0 : std::exp(l - ref);
    };
    const auto res = integrate_gk(f, a, b, 1e-300, quad.rel_tol, quad.max_intervals);
    if (!res.converged && !(res.error <= 1e-8 * std::abs(res.value)))
        throw ToleranceError("radial shell integral did not converge");
    if (ref > 700.0) return std::numeric_limits<double>::infinity();
    return std::exp(ref) * res.value;
}

}  // namespace symkit
