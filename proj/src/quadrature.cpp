#include "symkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "symkit/error.hpp"

namespace symkit {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw PreconditionError("quadrature tolerances must be positive");
    if (max_intervals < 1 || max_depth < 1)
        throw PreconditionError("quadrature refinement budgets must be positive");
    if (!(chamber_cutoff > 0.0) || !std::isfinite(chamber_cutoff))
        throw PreconditionError("chamber cutoff must be finite and positive");
    if (!(log_window > 0.0) || !std::isfinite(log_window) || !(split_t > 0.0))
        throw PreconditionError("subordination cutoffs must be finite and positive");
}

namespace {

// Kronrod 15-point abscissae (positive half) and weights; Gauss 7-point weights
// sit on the odd-indexed Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    long seq;
};

Segment gk15(const ScalarFn& f, double a, double b, long seq) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
    return {a, b, value, err, seq};
}

struct SegmentOrder {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.seq > y.seq;
    }
};

}  // namespace

QuadResult integrate_gk(const ScalarFn& f, const std::vector<double>& breaks, double abs_tol,
                        double rel_tol, int max_intervals) {
    QuadResult out;
    if (breaks.size() < 2) return out;
    std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> heap;
    long seq = 0;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] == breaks[i]) continue;
        Segment s = gk15(f, breaks[i], breaks[i + 1], seq++);
        out.evaluations += 15;
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }
    while (!heap.empty() && total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= max_intervals || !std::isfinite(total_err)) {
            out.converged = false;
            break;
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in double precision.
            heap.push(worst);
            out.converged = false;
            break;
        }
        Segment left = gk15(f, worst.a, mid, seq++);
        Segment right = gk15(f, mid, worst.b, seq++);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    std::vector<Segment> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    out.value = 0.0;
    out.error = 0.0;
    for (const auto& s : all) {
        out.value += s.value;
        out.error += s.error;
    }
    out.intervals = static_cast<int>(all.size());
    if (!std::isfinite(out.value)) out.converged = false;
    if (out.error > std::max(abs_tol, rel_tol * std::abs(out.value))) out.converged = false;
    return out;
}

QuadResult integrate_gk(const ScalarFn& f, double a, double b, double abs_tol, double rel_tol,
                        int max_intervals) {
    return integrate_gk(f, std::vector<double>{a, b}, abs_tol, rel_tol, max_intervals);
}

QuadResult integrate_tanh_sinh(const ScalarFn& f, double a, double b, double abs_tol,
                               double rel_tol, int max_levels) {
    QuadResult out;
    if (a == b) return out;
    const double half = 0.5 * (b - a);
    constexpr double kHalfPi = 0.5 * std::numbers::pi;
    constexpr double kTmax = 6.5;

    // Adds the contribution of the node pair at +t and -t.
    auto pair = [&](double t) {
        const double u = kHalfPi * std::sinh(t);
        const double cu = std::cosh(u);
        const double w = kHalfPi * std::cosh(t) / (cu * cu);
        if (w == 0.0 || !std::isfinite(w)) return 0.0;
        // 1 - tanh(u), kept accurate near the endpoints
        const double comp = std::exp(-u) / cu;
        double s = 0.0;
        const double xl = a + half * comp;
        const double xr = b - half * comp;
        if (xl > a && xl < b) {
            s += w * f(xl);
            ++out.evaluations;
        }
        if (t != 0.0 && xr > a && xr < b) {
            s += w * f(xr);
            ++out.evaluations;
        }
        return s;
    };

    double h = 1.0;
    double sum = pair(0.0);
    for (double t = h; t <= kTmax; t += h) sum += pair(t);
    double estimate = sum * h * half;
    double prev = estimate;
    out.converged = false;
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= kTmax; t += 2.0 * h) add += pair(t);
        sum += add;
        estimate = sum * h * half;
        const double diff = std::abs(estimate - prev);
        out.error = diff;
        prev = estimate;
        if (level >= 3 && diff <= std::max(abs_tol, rel_tol * std::abs(estimate))) {
            out.converged = true;
            break;
        }
    }
    out.value = estimate;
    if (!std::isfinite(out.value)) out.converged = false;
    out.intervals = 1;
    return out;
}

SemiInfiniteResult integrate_semi_infinite(const ScalarFn& f, double a, double core_length,
                                           double abs_tol, double rel_tol, int max_intervals,
                                           int max_levels) {
    SemiInfiniteResult r;
    r.core = integrate_gk(f, a, a + core_length, abs_tol, rel_tol, max_intervals);
    const double start = a + core_length;
    auto mapped = [&](double u) {
        const double x = start + core_length * (1.0 - u) / u;
        const double jac = core_length / (u * u);
        if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * jac;
    };
    r.tail = integrate_tanh_sinh(mapped, 0.0, 1.0, abs_tol, rel_tol, max_levels);
    return r;
}

const char* to_string(Growth g) {
    switch (g) {
        case Growth::converging: return "converging";
        case Growth::diverging: return "diverging";
        case Growth::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::vector<double> increment_ratios(const std::vector<double>& increments) {
    std::vector<double> ratios;
    for (std::size_t k = 0; k + 1 < increments.size(); ++k) {
        const double d = increments[k];
        ratios.push_back(d != 0.0 ? increments[k + 1] / d
                                  : (increments[k + 1] == 0.0 ? 0.0
                                                              : std::numeric_limits<double>::infinity()));
    }
    return ratios;
}

Growth classify_increments(const std::vector<double>& increments, int window) {
    const auto ratios = increment_ratios(increments);
    if (static_cast<int>(ratios.size()) < window) return Growth::inconclusive;
    bool all_ge = true, all_lt = true;
    for (std::size_t k = ratios.size() - window; k < ratios.size(); ++k) {
        const double q = ratios[k];
        if (!(q >= 1.0 - 1e-9)) all_ge = false;
        if (!(q < 1.0)) all_lt = false;
    }
    // Nonnegative increments are required for a growth verdict.
    for (std::size_t k = increments.size() - window - 1; k < increments.size(); ++k)
        if (increments[k] < 0.0) return Growth::inconclusive;
    if (all_ge) return Growth::diverging;
    if (all_lt) return Growth::converging;
    return Growth::inconclusive;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

}  // namespace symkit
