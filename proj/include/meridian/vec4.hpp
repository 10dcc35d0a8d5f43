#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace meridian {

/// Point/vector of R^4_1 in the orthonormal frame O e1 e2 e3 e4,
/// inner product diag(+1, +1, +1, -1).
struct Vec4 {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0, x4 = 0.0;

    constexpr Vec4() = default;
    constexpr Vec4(double a, double b, double c, double d) : x1(a), x2(b), x3(c), x4(d) {}

    static constexpr Vec4 e1() { return {1, 0, 0, 0}; }
    static constexpr Vec4 e2() { return {0, 1, 0, 0}; }
    static constexpr Vec4 e3() { return {0, 0, 1, 0}; }
    static constexpr Vec4 e4() { return {0, 0, 0, 1}; }

    constexpr Vec4 operator+(const Vec4& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3, x4 + o.x4}; }
    constexpr Vec4 operator-(const Vec4& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3, x4 - o.x4}; }
    constexpr Vec4 operator-() const { return {-x1, -x2, -x3, -x4}; }
    constexpr Vec4 operator*(double s) const { return {x1 * s, x2 * s, x3 * s, x4 * s}; }
    constexpr Vec4 operator/(double s) const { return {x1 / s, x2 / s, x3 / s, x4 / s}; }
    Vec4& operator+=(const Vec4& o) { x1 += o.x1; x2 += o.x2; x3 += o.x3; x4 += o.x4; return *this; }
    Vec4& operator-=(const Vec4& o) { x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; x4 -= o.x4; return *this; }

    double euclid_norm2() const { return x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4; }
    double euclid_norm() const { return std::sqrt(euclid_norm2()); }

    bool finite() const {
        return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3) && std::isfinite(x4);
    }
};

inline constexpr Vec4 operator*(double s, const Vec4& v) { return v * s; }

/// Indefinite inner product of signature (3,1): v.w under diag(+1,+1,+1,-1).
inline constexpr double mink_dot(const Vec4& v, const Vec4& w) {
    return v.x1 * w.x1 + v.x2 * w.x2 + v.x3 * w.x3 - v.x4 * w.x4;
}

enum class CausalCharacter { Spacelike, Timelike, Null };

/// Relative default tolerance for the null classification band.
inline double default_tau_null(const Vec4& v) { return 1e-12 * (1.0 + v.euclid_norm2()); }

/// Classifies v as spacelike (<v,v> > 0 or v = 0), timelike (< 0) or null (= 0, v != 0).
inline CausalCharacter causal_character(const Vec4& v, double tau_null) {
    const double q = mink_dot(v, v);
    if (v.euclid_norm2() == 0.0) return CausalCharacter::Spacelike;
    if (std::abs(q) <= tau_null) return CausalCharacter::Null;
    return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

inline CausalCharacter causal_character(const Vec4& v) {
    return causal_character(v, default_tau_null(v));
}

/// Matrix of pairwise mink_dot values of a frame of up to four vectors.
struct GramMatrix {
    std::size_t n = 0;
    std::array<std::array<double, 4>, 4> m{};

    double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

    /// Max |entry - diag(sig)| against an expected diagonal signature.
    double max_deviation(std::span<const double> sig) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double want = (i == j) ? sig[i] : 0.0;
                worst = std::max(worst, std::abs(m[i][j] - want));
            }
        return worst;
    }
};

inline GramMatrix gram_matrix(std::span<const Vec4> frame) {
    GramMatrix g;
    g.n = frame.size();
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) g.m[i][j] = mink_dot(frame[i], frame[j]);
    return g;
}

}  // namespace meridian
