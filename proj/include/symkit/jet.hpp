#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "symkit/error.hpp"

namespace symkit {

/// Second-order forward-mode jet: value, gradient and Hessian with respect to
/// up to kMaxVars independent variables. Used to apply the radial Casimir
/// operator to closed-form profiles without finite differences.
struct Jet {
    static constexpr int kMaxVars = 10;

    int n = 0;
    double v = 0.0;
    std::array<double, kMaxVars> g{};
    std::array<double, kMaxVars * kMaxVars> h{};

    Jet() = default;
    Jet(double value, int vars = 0) : n(vars), v(value) {}  // NOLINT: constants convert implicitly

    static Jet variable(double value, int index, int vars) {
        if (vars > kMaxVars || index < 0 || index >= vars)
            throw CapabilityError("jet supports at most 10 variables");
        Jet j(value, vars);
        j.g[index] = 1.0;
        return j;
    }

    double grad(int i) const { return g[i]; }
    double hess(int i, int k) const { return h[i * kMaxVars + k]; }

    /// Chain rule for a scalar function phi with phi(v) = f0, phi' = f1, phi'' = f2.
    Jet apply(double f0, double f1, double f2) const {
        Jet r(f0, n);
        for (int i = 0; i < n; ++i) r.g[i] = f1 * g[i];
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                r.h[i * kMaxVars + k] = f1 * h[i * kMaxVars + k] + f2 * g[i] * g[k];
        return r;
    }
};

namespace detail {
inline int jet_vars(const Jet& a, const Jet& b) { return a.n > b.n ? a.n : b.n; }
}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.v + b.v, detail::jet_vars(a, b));
    for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] + b.g[i];
    for (int i = 0; i < r.n; ++i)
        for (int k = 0; k < r.n; ++k) r.h[i * Jet::kMaxVars + k] = a.h[i * Jet::kMaxVars + k] + b.h[i * Jet::kMaxVars + k];
    return r;
}

inline Jet operator-(const Jet& a) {
    Jet r(-a.v, a.n);
    for (int i = 0; i < a.n; ++i) r.g[i] = -a.g[i];
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) r.h[i * Jet::kMaxVars + k] = -a.h[i * Jet::kMaxVars + k];
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v * b.v, detail::jet_vars(a, b));
    for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < r.n; ++i)
        for (int k = 0; k < r.n; ++k) {
            const int ik = i * Jet::kMaxVars + k;
            r.h[ik] = a.h[ik] * b.v + a.v * b.h[ik] + a.g[i] * b.g[k] + a.g[k] * b.g[i];
        }
    return r;
}

inline Jet reciprocal(const Jet& a) {
    const double inv = 1.0 / a.v;
    return a.apply(inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet& operator*=(Jet& a, const Jet& b) { return a = a * b; }

inline Jet exp(const Jet& a) {
    const double e = std::exp(a.v);
    return a.apply(e, e, e);
}
inline Jet log(const Jet& a) { return a.apply(std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sin(const Jet& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return a.apply(s, c, -s);
}
inline Jet cos(const Jet& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return a.apply(c, -s, -c);
}
inline Jet sinh(const Jet& a) {
    const double s = std::sinh(a.v), c = std::cosh(a.v);
    return a.apply(s, c, s);
}
inline Jet cosh(const Jet& a) {
    const double s = std::sinh(a.v), c = std::cosh(a.v);
    return a.apply(c, s, c);
}
inline Jet tanh(const Jet& a) {
    const double t = std::tanh(a.v), d = 1.0 - t * t;
    return a.apply(t, d, -2.0 * t * d);
}
inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v);
    return a.apply(s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet pow(const Jet& a, double p) {
    const double f0 = std::pow(a.v, p);
    return a.apply(f0, p * std::pow(a.v, p - 1.0), p * (p - 1.0) * std::pow(a.v, p - 2.0));
}

}  // namespace symkit
