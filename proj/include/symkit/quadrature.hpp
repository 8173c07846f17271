#pragma once

#include <functional>
#include <string>
#include <vector>

namespace symkit {

/// Tolerance, depth and cutoff policy shared by every improper integral.
struct QuadratureSpec {
    double abs_tol = 1e-14;
    double rel_tol = 1e-11;
    /// Bisection budget of one adaptive integration.
    int max_intervals = 4000;
    /// Dyadic refinement levels used by tanh-sinh and the growth tests.
    int max_depth = 12;
    /// Radius bounding chamber integrals over a+ (Sobolev norms, Lq far field).
    double chamber_cutoff = 40.0;
    /// Subordination window: t-integrands are dropped once they fall this many
    /// e-folds below their peak. The t-axis is always split at t = split_t.
    double log_window = 60.0;
    double split_t = 1.0;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
    bool converged = true;
};

using ScalarFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) bisection on [a, b]. Intervals are refined in a
/// deterministic order and summed left to right.
QuadResult integrate_gk(const ScalarFn& f, double a, double b, double abs_tol, double rel_tol,
                        int max_intervals = 4000);

/// Same, with a list of interior breakpoints that are always split.
QuadResult integrate_gk(const ScalarFn& f, const std::vector<double>& breaks, double abs_tol,
                        double rel_tol, int max_intervals = 4000);

/// Double-exponential (tanh-sinh) rule on [a, b]; robust against integrable
/// algebraic or logarithmic endpoint singularities. f is never evaluated at a or b.
/// Nodes near a are exact offsets from a, so put the stronger singularity there.
QuadResult integrate_tanh_sinh(const ScalarFn& f, double a, double b, double abs_tol,
                               double rel_tol, int max_levels = 10);

/// Integral over [a, inf). [a, a + core_length] uses Gauss-Kronrod, the tail is
/// mapped to (0, 1] through x = a + L / u and integrated with tanh-sinh.
struct SemiInfiniteResult {
    QuadResult core;
    QuadResult tail;
    double value() const { return core.value + tail.value; }
    double error() const { return core.error + tail.error; }
    bool converged() const { return core.converged && tail.converged; }
};
SemiInfiniteResult integrate_semi_infinite(const ScalarFn& f, double a, double core_length,
                                           double abs_tol, double rel_tol,
                                           int max_intervals = 4000, int max_levels = 10);

enum class Growth { converging, diverging, inconclusive };

const char* to_string(Growth g);

/// Geometric-growth test on a sequence of partial-integral increments.
/// Diverging: the last `window` successive ratios are all >= 1 (to ~1e-9).
/// Converging: the last `window` ratios are all < 1.
Growth classify_increments(const std::vector<double>& increments, int window = 6);

/// Successive ratios increments[k+1] / increments[k].
std::vector<double> increment_ratios(const std::vector<double>& increments);

/// Reference Gauss-Legendre rule on [-1, 1] (Golub-Welsch free Newton iteration).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace symkit
