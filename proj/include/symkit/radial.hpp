#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "symkit/jet.hpp"
#include "symkit/quadrature.hpp"
#include "symkit/rootdata.hpp"

namespace symkit {

enum class Smoothness { analytic, c2, sampled, derived };
const char* to_string(Smoothness s);

/// Value and the first two derivatives of a one-variable profile.
struct ProfileJet {
    double v = 0.0, d1 = 0.0, d2 = 0.0;
};
using Profile = std::function<ProfileJet(double)>;
using JetFunction = std::function<Jet(const std::vector<Jet>&)>;

/// A bi-K-invariant function given by its restriction to the closed chamber.
/// Coordinates are those of the space (simple-root coordinates for sl_n).
class RadialFunction {
public:
    enum class Kind { closed, norm_profile, grid, derived };

    /// f(H) from an expression in the coordinates of H, differentiated exactly.
    static RadialFunction closed(const SymmetricSpace& space, JetFunction f,
                                 Smoothness smooth = Smoothness::analytic);
    /// f(H) = g(||H||).
    static RadialFunction norm_profile(const SymmetricSpace& space, Profile g,
                                       Smoothness smooth = Smoothness::c2);
    /// f(H) = g(||H||) with g sampled at r0, r0 + h, ...; cubic B-spline
    /// interpolation. Derivatives are centered differences of the interpolant,
    /// checked against a halved step to `tol` (ResolutionError otherwise).
    static RadialFunction grid(const SymmetricSpace& space, double r0, double h,
                               std::vector<double> values, double tol = 1e-6);
    /// Pointwise values of some operator applied to another radial function.
    static RadialFunction derived(const SymmetricSpace& space, std::function<double(const Vec&)> f,
                                  std::string origin);

    Kind kind() const { return kind_; }
    Smoothness smoothness() const { return smooth_; }
    const SymmetricSpace& space() const { return *space_; }
    /// Sampled domain [lo, hi] of a grid function (norm values).
    double grid_lo() const;
    double grid_hi() const;
    const std::string& origin() const { return origin_; }

    double operator()(const Vec& H) const;
    /// Value at ||H|| = r in rank one (H = r along the positive root direction).
    double at_radius(double r) const;
    /// Value, coordinate gradient and Hessian at H. Not available for derived functions.
    Jet jet(const Vec& H) const;
    bool differentiable() const { return kind_ != Kind::derived; }

private:
    struct GridData;
    Kind kind_ = Kind::closed;
    Smoothness smooth_ = Smoothness::analytic;
    std::shared_ptr<const SymmetricSpace> space_;
    JetFunction closed_;
    Profile profile_;
    std::shared_ptr<const GridData> grid_;
    std::function<double(const Vec&)> derived_;
    std::string origin_;
};

/// Unit vector of the positive chamber in rank one.
Vec rank_one_direction(const SymmetricSpace& space);

/// Jet of ||H|| in the coordinates of H (the norm is not smooth at H = 0).
Jet norm_jet(const SymmetricSpace& space, const Vec& H);

/// -[Delta f + sum_{alpha > 0} m_alpha coth(alpha(H)) d_{A_alpha} f] at an
/// interior point H of the chamber. Walls raise DomainError.
double radial_casimir_at(const RadialFunction& f, const Vec& H);

/// The radial Casimir operator applied to f, as a derived (value-only) function.
RadialFunction radial_casimir_apply(const SymmetricSpace& space, const RadialFunction& f);

/// Polar frame of the positive chamber (rank 1 or 2): H = r B (cos t, sin t)
/// with B^T G B = I and t in [theta_min, theta_max].
struct ChamberFrame {
    int rank = 1;
    Mat basis;
    double theta_min = 0.0, theta_max = 0.0;
    Vec point(double r, double theta) const;
};
ChamberFrame chamber_frame(const SymmetricSpace& space);

/// log of r^{rank-1} times the angular integral of exp(log_f) over the chamber
/// arc of radius r; log_f may return -inf. Huge and tiny values are fine.
double log_chamber_shell_density(const ChamberFrame& frame, double r,
                                 const std::function<double(const Vec&)>& log_f,
                                 const QuadratureSpec& quad);

/// int_a^b exp(L(r)) dr with the exponent rescaled by its largest endpoint or
/// midpoint value; +inf once that value passes exp overflow.
double radial_shell_integral(const std::function<double(double)>& L, double a, double b,
                             const QuadratureSpec& quad);

}  // namespace symkit
