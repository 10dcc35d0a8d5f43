#include <doctest.h>

#include <cmath>
#include <random>

#include "meridian/vec4.hpp"

using namespace meridian;

TEST_CASE("inner product signature") {
    CHECK(mink_dot(Vec4::e4(), Vec4::e4()) == -1.0);
    CHECK(mink_dot(Vec4::e1(), Vec4::e1()) == 1.0);
    CHECK(mink_dot(Vec4{1, 0, 0, 1}, Vec4{1, 0, 0, 1}) == 0.0);
}

TEST_CASE("position vectors of the unit pseudo-sphere have unit square") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double w1 = d(rng), w2 = d(rng);
        // l = cosh(w1) cos(w2) e2 + cosh(w1) sin(w2) e3 + sinh(w1) e4
        const Vec4 l{0.0, std::cosh(w1) * std::cos(w2), std::cosh(w1) * std::sin(w2),
                     std::sinh(w1)};
        CHECK(mink_dot(l, l) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("inner product is symmetric and bilinear") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Vec4 v{d(rng), d(rng), d(rng), d(rng)};
        const Vec4 w{d(rng), d(rng), d(rng), d(rng)};
        const Vec4 x{d(rng), d(rng), d(rng), d(rng)};
        const double s = d(rng);
        CHECK(mink_dot(v, w) == mink_dot(w, v));
        CHECK(mink_dot(v + s * w, x) ==
              doctest::Approx(mink_dot(v, x) + s * mink_dot(w, x)).epsilon(1e-12));
    }
}

TEST_CASE("causal classification") {
    CHECK(causal_character(Vec4::e1()) == CausalCharacter::Spacelike);
    CHECK(causal_character(Vec4::e4()) == CausalCharacter::Timelike);
    CHECK(causal_character(Vec4{1, 1, 1, std::sqrt(3.0)}) == CausalCharacter::Null);
    // the zero vector counts as spacelike by convention
    CHECK(causal_character(Vec4{}) == CausalCharacter::Spacelike);
}

TEST_CASE("causal classification is scale invariant away from the null band") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::uniform_real_distribution<double> scale(0.1, 50.0);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const Vec4 v{d(rng), d(rng), d(rng), d(rng)};
        if (std::abs(mink_dot(v, v)) < 1e-3) continue;  // stay off the boundary
        const double s = scale(rng) * (i % 2 ? 1.0 : -1.0);
        CHECK(causal_character(v * s) == causal_character(v));
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("gram matrices") {
    const Vec4 basis[] = {Vec4::e1(), Vec4::e2(), Vec4::e3(), Vec4::e4()};
    const GramMatrix g = gram_matrix(basis);
    const double sig4[] = {1, 1, 1, -1};
    CHECK(g.max_deviation(sig4) == 0.0);

    // canonical (l, t, n) on the hyperbolic sphere: l timelike
    const Vec4 frame2[] = {Vec4::e4(), Vec4::e2(), Vec4::e3()};
    const GramMatrix g2 = gram_matrix(frame2);
    const double sig3[] = {-1, 1, 1};
    CHECK(g2.max_deviation(sig3) == 0.0);
    CHECK(g2(0, 0) == -1.0);
    CHECK(g2(0, 1) == 0.0);
}
