#pragma once

#include <cmath>

#include "meridian/errors.hpp"

namespace meridian {

/// Value and first three derivatives of a scalar function of one variable.
/// Arithmetic propagates derivatives exactly (Leibniz and Faa di Bruno coefficients),
/// so every profile formula gets f, f', f'', f''' with no differencing.
struct Jet3 {
    double v0 = 0.0, v1 = 0.0, v2 = 0.0, v3 = 0.0;

    constexpr Jet3() = default;
    constexpr Jet3(double a, double b = 0.0, double c = 0.0, double d = 0.0)
        : v0(a), v1(b), v2(c), v3(d) {}

    /// The identity function's jet at u: value u, derivative 1.
    static constexpr Jet3 variable(double u) { return {u, 1.0, 0.0, 0.0}; }
    static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }

    bool finite() const {
        return std::isfinite(v0) && std::isfinite(v1) && std::isfinite(v2) && std::isfinite(v3);
    }
};

inline constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2, a.v3 + b.v3};
}
inline constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2, a.v3 - b.v3};
}
inline constexpr Jet3 operator-(const Jet3& a) { return {-a.v0, -a.v1, -a.v2, -a.v3}; }
inline constexpr Jet3 operator+(const Jet3& a, double c) { return {a.v0 + c, a.v1, a.v2, a.v3}; }
inline constexpr Jet3 operator+(double c, const Jet3& a) { return a + c; }
inline constexpr Jet3 operator-(const Jet3& a, double c) { return {a.v0 - c, a.v1, a.v2, a.v3}; }
inline constexpr Jet3 operator-(double c, const Jet3& a) { return (-a) + c; }

inline constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v0 * b.v0,
            a.v1 * b.v0 + a.v0 * b.v1,
            a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
            a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3};
}
inline constexpr Jet3 operator*(const Jet3& a, double c) {
    return {a.v0 * c, a.v1 * c, a.v2 * c, a.v3 * c};
}
inline constexpr Jet3 operator*(double c, const Jet3& a) { return a * c; }

/// Composition: outer function with derivatives w0..w3 at a.v0, applied to inner jet a.
inline constexpr Jet3 compose(double w0, double w1, double w2, double w3, const Jet3& a) {
    return {w0,
            w1 * a.v1,
            w1 * a.v2 + w2 * a.v1 * a.v1,
            w1 * a.v3 + 3.0 * w2 * a.v1 * a.v2 + w3 * a.v1 * a.v1 * a.v1};
}

inline Jet3 recip(const Jet3& a) {
    if (a.v0 == 0.0) throw primitive_domain_error("recip", a.v0);
    const double x = a.v0;
    return compose(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x), a);
}
inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * recip(b); }
inline Jet3 operator/(const Jet3& a, double c) { return a * (1.0 / c); }
inline Jet3 operator/(double c, const Jet3& a) { return recip(a) * c; }

inline Jet3 sqrt(const Jet3& a) {
    if (a.v0 < 0.0) throw primitive_domain_error("sqrt", a.v0);
    const double r = std::sqrt(a.v0);
    if (r == 0.0) throw primitive_domain_error("sqrt", a.v0);
    return compose(r, 0.5 / r, -0.25 / (r * a.v0), 0.375 / (r * a.v0 * a.v0), a);
}

inline Jet3 sin(const Jet3& a) {
    const double s = std::sin(a.v0), c = std::cos(a.v0);
    return compose(s, c, -s, -c, a);
}
inline Jet3 cos(const Jet3& a) {
    const double s = std::sin(a.v0), c = std::cos(a.v0);
    return compose(c, -s, -c, s, a);
}
inline Jet3 sinh(const Jet3& a) {
    const double s = std::sinh(a.v0), c = std::cosh(a.v0);
    return compose(s, c, s, c, a);
}
inline Jet3 cosh(const Jet3& a) {
    const double s = std::sinh(a.v0), c = std::cosh(a.v0);
    return compose(c, s, c, s, a);
}
inline Jet3 exp(const Jet3& a) {
    const double e = std::exp(a.v0);
    return compose(e, e, e, e, a);
}
inline Jet3 log(const Jet3& a) {
    if (a.v0 <= 0.0) throw primitive_domain_error("log", a.v0);
    const double x = a.v0;
    return compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), a);
}
inline Jet3 asin(const Jet3& a) {
    const double x = a.v0;
    if (x <= -1.0 || x >= 1.0) throw primitive_domain_error("asin", x);
    const double q = 1.0 - x * x;           // > 0
    const double w1 = 1.0 / std::sqrt(q);   // (1-x^2)^{-1/2}
    const double w2 = x * w1 / q;           // x (1-x^2)^{-3/2}
    const double w3 = (1.0 + 2.0 * x * x) * w1 / (q * q);
    return compose(std::asin(x), w1, w2, w3, a);
}
/// abs of a jet for non-zero argument (|x| is smooth away from 0).
inline Jet3 abs(const Jet3& a) {
    if (a.v0 == 0.0) throw primitive_domain_error("abs", a.v0);
    return a.v0 > 0.0 ? a : -a;
}
inline Jet3 pow(const Jet3& a, double p) {
    if (a.v0 <= 0.0) throw primitive_domain_error("pow", a.v0);
    const double x = a.v0;
    return compose(std::pow(x, p), p * std::pow(x, p - 1.0), p * (p - 1.0) * std::pow(x, p - 2.0),
                   p * (p - 1.0) * (p - 2.0) * std::pow(x, p - 3.0), a);
}

}  // namespace meridian
