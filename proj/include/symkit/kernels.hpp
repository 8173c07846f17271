#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "symkit/quadrature.hpp"
#include "symkit/rootdata.hpp"

namespace symkit {

enum class HeatMode { closed, spectral };
const char* to_string(HeatMode m);
HeatMode parse_heat_mode(const std::string& s);

/// Closed heat kernels exist for hyperbolic_2 and hyperbolic_3 in the unit
/// curvature metric.
bool has_closed_heat_kernel(const SymmetricSpace& space);

/// Heat kernel k_t at distance r from the origin (rank one).
///   closed:   normalized against Riemannian volume, unit L1 mass;
///   spectral: int_0^inf |c(l)|^{-2} e^{-t(||rho||^2 + l^2)} phi_l(r) dl, i.e.
///             the inversion integral with C_SF = 1; multiply by
///             heat_normalization() to compare with the closed form.
/// Spectral mode covers rank one without a 2 alpha root. For multiplicity 2 the
/// integrand is entire and the line of integration is shifted to
/// Im y = a / (2 t <alpha, alpha>), which removes the oscillation.
double heat_kernel(const SymmetricSpace& space, double t, double r, HeatMode mode,
                   const QuadratureSpec& quad = {});
/// log k_t(r) in closed mode; stays finite where k_t underflows.
double log_heat_kernel_closed(const SymmetricSpace& space, double t, double r);

/// Spherical function phi_y(a) of real hyperbolic space with root
/// multiplicity m, as a function of a = alpha(H) and y = <l, alpha>/<alpha, alpha>
/// (integral representation over the sphere; closed form for m = 2).
double spherical_function(int m, double y, double a, const QuadratureSpec& quad = {});

/// Ratio closed / spectral at (t0, r0): the global constant C_SF in the
/// spectral inversion formula for this metric.
double heat_normalization(const SymmetricSpace& space, const QuadratureSpec& quad = {},
                          double t0 = 1.0, double r0 = 1.0);

/// Area of the unit sphere S^{k-1} in R^k.
double sphere_area(int k);

/// ||k_t||_1 = |S^{d-1}| int_0^inf k_t(r) sinh^{d-1} r dr for the closed kernel.
double heat_kernel_l1_mass(const SymmetricSpace& space, double t, const QuadratureSpec& quad = {});

/// Bessel-Green-Riesz kernel kappa_s(r) = Gamma(s)^{-1} int_0^inf t^{s-1} k_t(r) dt,
/// integrated in log t with the split at t = quad.split_t. Uses the closed heat
/// kernel when available and the spectral one otherwise.
double bgr_kernel(const SymmetricSpace& space, double s, double r, const QuadratureSpec& quad = {});
double log_bgr_kernel(const SymmetricSpace& space, double s, double r, const QuadratureSpec& quad = {});

/// Anker-Ji bounding function of kappa_s away from the origin (||H|| >= 1):
/// ||H||^{s - (l+1)/2 - |S++|} e^{-||rho|| ||H|| - <rho, H>} prod_{S++} (1 + alpha(H)).
struct AsymptoticBound {
    double s = 0.0;
    int rank = 1;
    int indivisible = 1;
    double rho_norm = 0.0;
    Vec rho;                       // covector
    std::vector<Vec> indivisible_roots;

    double exponent() const { return s - 0.5 * (rank + 1) - indivisible; }
    double log_value(const SymmetricSpace& space, const Vec& H) const;
    nlohmann::ordered_json to_json() const;
};
AsymptoticBound asymptotic_bound(const SymmetricSpace& space, double s);
double anker_ji_envelope(const SymmetricSpace& space, double s, const Vec& H);
double log_anker_ji_envelope(const SymmetricSpace& space, double s, const Vec& H);

/// 1 < q < dim/(dim - 2s) and q <= 2. Applies only for 0 < 2s < dim.
bool lq_admissible(int dim_gk, double s, double q);
/// dim/(dim - 2s), the near-origin threshold.
double lq_threshold(int dim_gk, double s);

enum class LqMode { automatic, exact, envelope };
const char* to_string(LqMode m);
LqMode parse_lq_mode(const std::string& s);

struct LqRegion {
    Growth verdict = Growth::inconclusive;
    double value = 0.0;   // integral over the region (finite case)
    double tail = 0.0;    // geometric remainder beyond the last shell
    std::vector<double> shell_edges;
    std::vector<double> increments;
    std::vector<double> ratios;
    nlohmann::ordered_json to_json() const;
};

/// int |kappa_s|^q delta dH over the chamber, split at ||H|| = 1. The near
/// field runs over dyadic shells toward the origin, the far field over dyadic
/// shells outward; each is classified by the geometric-growth test and a
/// converging trace is completed by its geometric remainder.
struct LqNorm {
    LqMode mode = LqMode::exact;
    double s = 0.0, q = 0.0;
    LqRegion near, far;
    bool finite() const { return near.verdict == Growth::converging && far.verdict == Growth::converging; }
    double integral() const { return near.value + far.value; }
    double norm() const;  // integral^{1/q}; DivergenceError when divergent
    nlohmann::ordered_json to_json() const;
};

/// exact:    kappa_s from bgr_kernel (hyperbolic_2/3, unit curvature);
/// envelope: near field ||H||^{2s - dim}, far field the Anker-Ji bound (rank <= 2).
LqNorm lq_norm_numeric(const SymmetricSpace& space, double s, double q, const QuadratureSpec& quad = {},
                       LqMode mode = LqMode::automatic);

struct KernelRow {
    double r;
    double value;
};
std::vector<KernelRow> tabulate_heat(const SymmetricSpace& space, double t, const std::vector<double>& radii,
                                     HeatMode mode, const QuadratureSpec& quad = {});
std::vector<KernelRow> tabulate_bgr(const SymmetricSpace& space, double s, const std::vector<double>& radii,
                                    const QuadratureSpec& quad = {});

}  // namespace symkit
