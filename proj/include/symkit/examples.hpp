#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "symkit/quadrature.hpp"
#include "symkit/radial.hpp"
#include "symkit/rootdata.hpp"

namespace symkit {

/// Inner flat region ||H|| <= r0 with value inner_value, quintic Hermite
/// transition on [r0, 1], e^{-A ||H||} from ||H|| = 1 on.
struct Gluing {
    double r0 = 0.5;
    double inner_value = 1.0;
};

class SlowDecaySymbol {
public:
    SlowDecaySymbol(const SymmetricSpace& space, double A, Gluing gluing = {});

    const SymmetricSpace& space() const { return function_.space(); }
    double A() const { return A_; }
    const Gluing& gluing() const { return gluing_; }
    /// Profile g with f(H) = g(||H||), with derivatives.
    ProfileJet profile(double r) const;
    /// The transition polynomial on the closed interval [r0, 1], giving the
    /// one-sided limits at both gluing points.
    ProfileJet transition(double r) const;
    const RadialFunction& function() const { return function_; }
    double operator()(const Vec& H) const { return function_(H); }
    /// The radial Casimir applied to f at an interior chamber point.
    double casimir(const Vec& H) const { return radial_casimir_at(function_, H); }

private:
    double A_;
    Gluing gluing_;
    Profile profile_;
    Profile transition_;
    RadialFunction function_;
};

SlowDecaySymbol slow_decay_symbol(const SymmetricSpace& space, double A, Gluing gluing = {});

/// Which lower bound on S_G a threshold was computed under.
enum class SgConvention { full_dimension, quarter_dimension };
const char* to_string(SgConvention c);
SgConvention parse_sg_convention(const std::string& s);
/// "S_G > dim(G/K)" or "S_G > dim(G/K)/4".
std::string describe(SgConvention c);
void check_sg(int dim_gk, double S_G, SgConvention c);

struct DecayThreshold {
    double value = 0.0;  // ||rho|| / S_G
    double S_G = 0.0;
    double rho_norm = 0.0;
    SgConvention convention = SgConvention::full_dimension;
    nlohmann::ordered_json to_json() const;
};
DecayThreshold decay_threshold(const SymmetricSpace& space, double S_G,
                               SgConvention convention = SgConvention::full_dimension);

/// (int_{a+, ||H|| <= R} |Df|^{2 S_G} delta dH)^{1/(2 S_G)} on a cutoff ladder.
/// Shells of width 2 between the first and last rung feed the geometric-growth
/// test; a converging trace is completed by its geometric remainder.
struct SobolevNorm {
    double S_G = 0.0;
    double A = 0.0;
    SgConvention convention = SgConvention::full_dimension;
    std::vector<double> ladder;
    std::vector<double> partial;      // integral up to each rung
    std::vector<double> shell_edges;
    std::vector<double> increments;   // shells past the first rung
    std::vector<double> ratios;
    Growth verdict = Growth::inconclusive;
    double integral = 0.0;            // with the geometric tail (finite case)
    double tail = 0.0;
    double outer = 0.0;               // part over ||H|| >= 1, tail included

    bool finite() const { return verdict == Growth::converging; }
    double value() const;  // integral^{1/(2 S_G)}; DivergenceError when divergent
    nlohmann::ordered_json to_json() const;
};

SobolevNorm symbol_sobolev_norm(const SymmetricSpace& space, const SlowDecaySymbol& f, double S_G,
                                const QuadratureSpec& quad = {}, std::vector<double> ladder = {20.0, 30.0, 40.0},
                                SgConvention convention = SgConvention::full_dimension);

/// Fitted D in |Df(H)| <= D e^{-A ||H||} on r_min <= ||H|| <= r_max, sampled
/// where every alpha(H) >= wall_margin ||H||. Points closer to a wall are
/// reported separately and carry no verdict.
struct EnvelopeFit {
    double D = 0.0;
    double wall_margin = 0.0;
    double r_min = 1.0, r_max = 40.0;
    int samples = 0;
    double near_wall_max_ratio = 0.0;  // max |Df| e^{A||H||} inside the margin
    int near_wall_samples = 0;
    nlohmann::ordered_json to_json() const;
};
EnvelopeFit fit_casimir_envelope(const SlowDecaySymbol& f, double r_min = 1.0, double r_max = 40.0,
                                 double wall_margin = 0.05, int radial_samples = 80, int angular_samples = 24);

/// Rows (r, f, Df) along the rho direction.
struct ProfileRow {
    double r, f, Df;
};
std::vector<ProfileRow> symbol_profile(const SlowDecaySymbol& f, const std::vector<double>& radii);

/// SL(n, R) comparison between the slow-decay threshold and the decay rate
/// 2^{-1/2} d_G / n, d_G = floor(n^2 / 4), of symbols built from the adjoint
/// representation norm.
struct ComparisonReport {
    int n = 0;
    int dim_gk = 0;
    double rho_norm_sq = 0.0;         // from the root data
    double rho_norm_sq_approx = 0.0;  // n (n + 3) / 6
    SgConvention convention = SgConvention::full_dimension;
    double margin = 0.0;
    double S_G = 0.0;
    double A_threshold = 0.0;
    int d_G = 0;
    double adjoint_decay_rate = 0.0;
    double p_min = 0.0, p_max = 0.0;  // s = 1
    bool comparison_available = false;  // n >= 3
    bool verdict = false;               // A_threshold < adjoint_decay_rate

    nlohmann::ordered_json to_json() const;
    static ComparisonReport from_json(const nlohmann::json& j);
    static std::vector<std::string> csv_header();
    std::vector<double> csv_row() const;
};

ComparisonReport slnr_report(int n, double margin);

}  // namespace symkit
