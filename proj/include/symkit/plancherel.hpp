#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "symkit/quadrature.hpp"
#include "symkit/rootdata.hpp"

namespace symkit {

/// Spectral parameters lambda are covectors (same coordinates as roots); the
/// spectral space carries the dual inner product and its Lebesgue measure.
using SpectralParameter = Vec;

enum class DensityMode { automatic, rank_one_closed_form, complex_polynomial, gk_product };
const char* to_string(DensityMode m);
DensityMode parse_density_mode(const std::string& s);

/// Mode actually used by `automatic`: closed form for hyperbolic spaces,
/// polynomial for complex groups, Gindikin-Karpelevich product otherwise.
DensityMode resolve_mode(const SymmetricSpace& space, DensityMode requested);

struct CValue {
    std::complex<double> value;
    /// lambda sits on a wall, where a Gamma factor has a pole.
    bool pole = false;
};

/// Gindikin-Karpelevich product over indivisible positive roots, each factor
/// normalized by c_alpha(-i rho) = 1:
///   c_alpha(l) ~ 2^{-i l_a} Gamma(i l_a) /
///               (Gamma((m_a/2 + 1 + i l_a)/2) Gamma((m_a/2 + m_2a + i l_a)/2)),
/// with l_a = <l, alpha> / <alpha, alpha> in the dual inner product.
CValue c_function(const SymmetricSpace& space, const SpectralParameter& lambda);

struct DensityValue {
    double value = 0.0;
    /// Removable zero: lambda on a wall (the density's limit value 0 returned).
    bool removable_limit = false;
    DensityMode mode = DensityMode::gk_product;
};

/// Reusable density evaluator; precomputes the per-root Gamma normalizations.
class DensityEvaluator {
public:
    DensityEvaluator(const SymmetricSpace& space, DensityMode mode = DensityMode::automatic);
    DensityMode mode() const { return mode_; }
    /// log |c(lambda)|^{-2}; -inf on walls.
    double log_density(const SpectralParameter& lambda) const;
    double operator()(const SpectralParameter& lambda) const {
        const double l = log_density(lambda);
        return std::isinf(l) && l < 0 ? 0.0 : std::exp(l);
    }

private:
    struct Impl;
    const SymmetricSpace* space_;
    DensityMode mode_;
    std::shared_ptr<const Impl> impl_;
};

/// |c(lambda)|^{-2}.
DensityValue plancherel_density_eval(const SymmetricSpace& space, const SpectralParameter& lambda,
                                     DensityMode mode = DensityMode::automatic);
double plancherel_density(const SymmetricSpace& space, const SpectralParameter& lambda,
                          DensityMode mode = DensityMode::automatic);
double log_plancherel_density(const SymmetricSpace& space, const SpectralParameter& lambda,
                              DensityMode mode = DensityMode::automatic);

/// Closed rank-one law |Gamma(m/2 + iy) / Gamma(iy)|^2 (Gamma(m/2)/Gamma(m))^2 in
/// elementary form (product for even m, y tanh(pi y) times a product for odd m).
double rank_one_density(int m, double y);

/// ||rho||^2 + ||lambda||^2 and its negative powers.
double casimir_symbol(const SymmetricSpace& space, const SpectralParameter& lambda);
double bgr_symbol(const SymmetricSpace& space, const SpectralParameter& lambda, double s);
double heat_symbol(const SymmetricSpace& space, const SpectralParameter& lambda, double t);
/// log(||rho||^2 + r^2) without overflow for huge r.
double log_casimir_symbol_radial(double rho_sq, double r);

enum class SymbolKind { casimir, bgr, heat, custom };
const char* to_string(SymbolKind k);

/// A spectral symbol depending on lambda through ||lambda|| only.
struct SpectralSymbol {
    SymbolKind kind = SymbolKind::casimir;
    double parameter = 0.0;
    /// log of the symbol as a function of ||lambda||; used for custom symbols.
    std::function<double(double)> log_radial;

    static SpectralSymbol casimir();
    static SpectralSymbol bgr(double s);
    static SpectralSymbol heat(double t);

    double log_value(const SymmetricSpace& space, double lambda_norm) const;
    double value(const SymmetricSpace& space, const SpectralParameter& lambda) const;
};

/// Polar frame of the dual chamber (rank 1 or 2): lambda = r B (cos t, sin t)
/// with B^T G^{-1} B = I, t in [theta_min, theta_max].
struct SpectralFrame {
    int rank = 1;
    Mat basis;
    double theta_min = 0.0, theta_max = 0.0;
    SpectralParameter point(double r, double theta) const;
};
SpectralFrame spectral_frame(const SymmetricSpace& space);

/// Angular integral of the density over the chamber at radius r (rank 2), or
/// the density itself (rank 1). Multiplied by r^{rank-1} this is the radial
/// integrand of any norm-radial spectral integral.
double angular_density(const SymmetricSpace& space, const SpectralFrame& frame, double r,
                       DensityMode mode, const QuadratureSpec& quad);

/// Outcome of an improper spectral integral with divergence detection.
struct SpectralIntegral {
    bool finite = false;
    Growth verdict = Growth::inconclusive;
    double value = 0.0;      // integral (finite case)
    double error = 0.0;
    bool core_converged = false, tail_converged = false;
    double cutoff = 0.0;     // end of the Gauss-Kronrod core
    double tail = 0.0;       // mapped tail contribution beyond cutoff
    double tail_geometric = 0.0;  // geometric extrapolation from the dyadic trace
    std::vector<double> shell_edges;
    std::vector<double> increments;
    std::vector<double> ratios;
    DensityMode mode = DensityMode::gk_product;
    nlohmann::ordered_json diagnostics() const;
};

/// integral over the dual chamber of symbol(lambda) |c(lambda)|^{-2} d lambda.
SpectralIntegral spectral_integral(const SymmetricSpace& space, const SpectralSymbol& symbol,
                                   const QuadratureSpec& quad,
                                   DensityMode mode = DensityMode::automatic);

struct SpectralNorm {
    SpectralIntegral integral;
    bool finite() const { return integral.finite; }
    double value() const;  // sqrt of the integral; DivergenceError when divergent
};

/// (integral (||rho||^2 + ||lambda||^2)^{-2s} |c|^{-2} d lambda)^{1/2} over the
/// chamber. Divergence (s <= dim/4) is reported, not thrown.
SpectralNorm casimir_inverse_l2_norm(const SymmetricSpace& space, double s,
                                     const QuadratureSpec& quad,
                                     DensityMode mode = DensityMode::automatic);

struct DensityRow {
    double lambda_norm;
    double density;
};
/// Density along the ray lambda = r * direction (direction normalized in the
/// dual norm; default: the rho direction).
std::vector<DensityRow> density_table(const SymmetricSpace& space, const std::vector<double>& radii,
                                      DensityMode mode = DensityMode::automatic,
                                      const SpectralParameter* direction = nullptr);

}  // namespace symkit
