#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symkit/error.hpp"
#include "symkit/quadrature.hpp"
#include "symkit/rootdata.hpp"

namespace symkit {

/// (s, p) outside the admissibility region |1/p - 1/2| < s / (2 S_G).
class RegionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
    const char* kind() const noexcept override { return "region"; }
};

struct PInterval {
    double p_min = 1.0;
    double p_max = 2.0;  // +inf when s == S_G
};

/// Checks S_G > dim/4 and 0 < s <= S_G (PreconditionError otherwise).
void check_sobolev_exponents(int dim_gk, double S_G, double s);
bool admissible(int dim_gk, double S_G, double s, double p);
/// (2 S_G / (S_G + s), 2 S_G / (S_G - s)).
PInterval p_interval(double S_G, double s);

/// The L^2 Sobolev bound 2 * sobolev_norm * ||Omega^{-S_G}||_{L^2}, where
/// sobolev_norm = ||Omega^{S_G} m||_2 and the spectral norm uses C_SF = 1.
double l2_sobolev_bound(const SymmetricSpace& space, double S_G, double sobolev_norm,
                          const QuadratureSpec& quad = {});

struct ThreeLinesWeights {
    double w0 = 0.0, w1 = 0.0;
    double error0 = 0.0, error1 = 0.0;
};
/// The two cosh-kernel masses at beta; analytically (1 - beta, beta).
ThreeLinesWeights three_lines_weights(double beta, const QuadratureSpec& quad = {});

/// (1 + |t|^3 log^2 |t|)^exponent, exponent in [0, 1/2].
double cowling_growth(double t, double exponent);

/// Boundary profile of the declared growth class
///   log A(t) = log_constant + cowling_exponent * log(1 + |t|^3 log^2 |t|)
///              + exp_coefficient * e^{exp_rate |t|}.
/// The exponential part is the hypothesis class of the three lines lemma and
/// is accepted only for exp_rate < pi.
struct BoundaryProfile {
    double log_constant = 0.0;
    double cowling_exponent = 0.0;
    double exp_coefficient = 0.0;
    double exp_rate = 0.0;

    static BoundaryProfile constant(double a);
    static BoundaryProfile cowling(double a, double exponent);
    void validate() const;
    double log_value(double t) const;
    bool is_constant() const { return cowling_exponent == 0.0 && exp_coefficient == 0.0; }
    nlohmann::ordered_json to_json() const;
};

/// D_beta = sin(pi b)/2 int [log A0(t) / (cosh pi t - cos pi b) + log A1(t) / (cosh pi t + cos pi b)] dt.
/// beta = 0 and 1 give the limits log A0(0) and log A1(0).
double d_beta(double beta, const BoundaryProfile& A0, const BoundaryProfile& A1,
              const QuadratureSpec& quad = {});

/// Exponents of the interpolation between (p0, s0) = (2, s0) and (p1, S_G).
struct InterpolationPlan {
    int dim_gk = 0;
    double S_G = 0.0, s = 0.0;
    double p = 2.0;           // requested exponent
    double p_used = 2.0;      // p, or its conjugate when p > 2
    bool dual = false;
    double alpha_min = 0.0;   // feasible alpha interval (alpha_min, 1)
    double alpha = 0.5;
    double theta = 0.0;
    double p0 = 2.0, p1 = 2.0;
    double s0 = 0.0, s1 = 0.0;

    double s_beta(double beta) const { return (1.0 - beta) * s0 + beta * s1; }
    double q_beta(double beta) const { return 2.0 * S_G / s_beta(beta); }
    double q() const { return 2.0 * S_G / s; }
    nlohmann::ordered_json to_json() const;
};

/// alpha defaults to the midpoint of the feasible interval.
InterpolationPlan interpolation_plan(int dim_gk, double S_G, double s, double p,
                                     std::optional<double> alpha = std::nullopt);

/// D_theta through d_beta at the plan's evaluation point.
double d_beta_bound(const InterpolationPlan& plan, const BoundaryProfile& A0, const BoundaryProfile& A1,
                    const QuadratureSpec& quad = {});

enum class Provenance { computed, placeholder, user };
const char* to_string(Provenance p);

/// One multiplicative factor value = base^exponent.
struct Factor {
    std::string name;
    double base = 1.0;
    double exponent = 1.0;
    double value = 1.0;
    Provenance provenance = Provenance::computed;
    std::string step;
    std::string note;
};

struct ConstantBreakdown {
    InterpolationPlan plan;
    double sobolev_norm_q = 0.0;
    std::vector<Factor> factors;

    /// Left-to-right product of the factor values.
    double product() const;
    bool has_placeholders() const;
    nlohmann::ordered_json to_json() const;
};

struct UserConstants {
    std::optional<double> c_beta;        // ||Omega^{-s0}: L^{q0} -> L^inf||
    std::optional<double> c_prime_beta;  // imaginary-power constant
    std::optional<double> alpha;
};

/// Explicit bound C * ||Omega^s m||_{L^q}, q = 2 S_G / s, assembled from the
/// interpolation argument: the q0 line carries C_beta C'_beta, the imaginary-power
/// growth profile and ||.||^{q/q0}; the q1 line the L^2 Sobolev factor and
/// ||.||^{q/2}. Both lines are weighted by the cosh kernels at beta = theta.
ConstantBreakdown cgsp_estimate(const SymmetricSpace& space, double S_G, double s, double p,
                                const UserConstants& user, double sobolev_norm_q,
                                const QuadratureSpec& quad = {});

}  // namespace symkit
