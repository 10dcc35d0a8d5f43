#include <doctest.h>

#include <cmath>
#include <vector>

#include "meridian/errors.hpp"
#include "meridian/profile.hpp"

using namespace meridian;

namespace {

std::vector<double> linspace(Interval iv, int n, double margin = 0.0) {
    std::vector<double> out;
    const double lo = iv.lo + margin, hi = iv.hi - margin;
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * double(i) / double(n - 1));
    return out;
}

}  // namespace

TEST_CASE("flat profiles") {
    const MeridianProfile p1 = flat_profile(MeridianKind::KindI, 0.6, 1.0, 0.0, {-0.5, 0.5});
    CHECK(p1.g.eval(0.2).v1 == doctest::Approx(0.8));
    CHECK(p1.f.eval(0.2).v2 == 0.0);
    CHECK(p1.kappa_m(0.1) == 0.0);

    const MeridianProfile p2 =
        flat_profile(MeridianKind::KindII, std::sqrt(2.0), 1.0, 0.0, {-0.1, 0.5});
    CHECK(p2.g.eval(0.3).v1 == doctest::Approx(1.0));

    // the constant-f profile of the parallel-H family
    const MeridianProfile p3 = flat_profile(MeridianKind::KindI, 0.0, 1.0, 0.0, {-1.0, 1.0});
    CHECK(p3.f(0.7) == 1.0);
    CHECK(p3.g.eval(0.7).v1 == doctest::Approx(1.0));

    CHECK_THROWS_AS(flat_profile(MeridianKind::KindI, 1.2, 1.0, 0.0, {-1.0, 1.0}),
                    parameter_error);
    CHECK_THROWS_AS(flat_profile(MeridianKind::KindII, 0.5, 1.0, 0.0, {-1.0, 1.0}),
                    parameter_error);
}

TEST_CASE("constant curvature profiles satisfy their oscillator equation") {
    struct Case {
        MeridianKind kind;
        double K, a1, a2;
        Interval req;
    };
    const Case cases[] = {
        {MeridianKind::KindI, 1.0, 1.0, 0.0, {0.3, 2.8}},    // f = sin u on (0, pi)
        {MeridianKind::KindI, -1.0, 0.0, 1.0, {-0.8, 0.8}},  // f = cosh u where sinh^2 < 1
        {MeridianKind::KindII, 1.0, 1.0, 0.0, {1.0, 3.0}},   // f = cosh u where sinh^2 > 1
        {MeridianKind::KindII, -1.0, 2.0, 0.0, {-3.0, 3.0}},
    };
    for (const Case& c : cases) {
        const MeridianProfile p = constant_k_profile(c.kind, c.K, c.a1, c.a2, c.req);
        const double sign = c.kind == MeridianKind::KindI ? 1.0 : -1.0;
        for (double u : linspace(p.domain, 200)) {
            const Jet3 fj = p.f.eval(u);
            CHECK(std::abs(fj.v2 + sign * c.K * fj.v0) < 1e-10);
        }
    }
    // sin branch: f really is sin u on the clipped domain
    const MeridianProfile p = constant_k_profile(MeridianKind::KindI, 1.0, 1.0, 0.0, {0.3, 2.8});
    CHECK(p.f(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(constant_k_profile(MeridianKind::KindI, 0.0, 1.0, 0.0, {0.0, 1.0}),
                    parameter_error);
}

TEST_CASE("minimal profiles satisfy f f'' + f'^2 - 1 = 0") {
    const MeridianProfile p1 = minimal_profile(MeridianKind::KindI, 0.0, 1.0, 0.0, {-1.0, 1.0});
    {
        const Jet3 fj = p1.f.eval(0.0);
        CHECK(fj.v0 == doctest::Approx(1.0));
        CHECK(fj.v1 == doctest::Approx(0.0));
        CHECK(fj.v2 == doctest::Approx(1.0));
    }
    const MeridianProfile p2 = minimal_profile(MeridianKind::KindI, 1.0, 2.0, 0.5, {-1.0, 2.0});
    const MeridianProfile p3 = minimal_profile(MeridianKind::KindII, 2.0, 1.0, 0.0, {-1.0, 3.0});
    for (const MeridianProfile* p : {&p1, &p2, &p3})
        for (double u : linspace(p->domain, 300)) {
            const Jet3 fj = p->f.eval(u);
            CHECK(std::abs(fj.v0 * fj.v2 + fj.v1 * fj.v1 - 1.0) < 1e-10);
        }
    // closed-form g with sqrt(b - a^2) = 1
    CHECK(p2.g(1.0) ==
          doctest::Approx(std::log(1.0 + 1.0 + std::sqrt(1.0 + 2.0 + 2.0)) + 0.5).epsilon(1e-12));
    // KindII coefficient sqrt(a^2 - b) = sqrt(3)
    {
        const Jet3 gj = p3.g.eval(1.5);
        const Jet3 fj = p3.f.eval(1.5);
        const double expect = std::sqrt(3.0) / (1.5 + 2.0 + fj.v0) * (1.0 + fj.v1);
        CHECK(gj.v1 == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK_THROWS_AS(minimal_profile(MeridianKind::KindI, 2.0, 1.0, 0.0, {-1.0, 1.0}),
                    parameter_error);
    CHECK_THROWS_AS(minimal_profile(MeridianKind::KindII, 1.0, 2.0, 0.0, {-1.0, 1.0}),
                    parameter_error);
}

TEST_CASE("g_from_f reconstructs the constraint derivatives") {
    // KindI, f = a u + b: g' = sqrt(1 - a^2)
    const SmoothFn1 f =
        from_expr("f", {-1.0, 1.0}, [](Jet3 u) { return 0.6 * u + 1.5; });
    const SmoothFn1 g = g_from_f(f, MeridianKind::KindI, +1, 0.0, 0.25, {-1.0, 1.0});
    CHECK(g(0.0) == doctest::Approx(0.25));
    CHECK(g.eval(0.5).v1 == doctest::Approx(0.8));
    CHECK(g(0.5) == doctest::Approx(0.25 + 0.8 * 0.5).epsilon(1e-12));

    // KindI, f = sqrt(u^2 + b): g = sqrt(b) ln|u + sqrt(u^2+b)| + c and g'' = -f'f''/g'
    const double b = 2.0;
    const SmoothFn1 f2 =
        from_expr("f", {-1.0, 1.0}, [b](Jet3 u) { return sqrt(u * u + b); });
    const SmoothFn1 g2 = g_from_f(f2, MeridianKind::KindI, +1, 0.0, 0.0, {-1.0, 1.0});
    for (double u : linspace({-0.9, 0.9}, 50)) {
        const double closed =
            std::sqrt(b) * (std::log(u + std::sqrt(u * u + b)) - std::log(std::sqrt(b)));
        CHECK(g2(u) == doctest::Approx(closed).epsilon(1e-10));
        const Jet3 fj = f2.eval(u);
        const Jet3 gj = g2.eval(u);
        CHECK(std::abs(gj.v2 + fj.v1 * fj.v2 / gj.v1) < 1e-9);
    }

    // KindII linear profile
    const SmoothFn1 f3 =
        from_expr("f", {-1.0, 1.0}, [](Jet3 u) { return std::sqrt(2.0) * u + 3.0; });
    const SmoothFn1 g3 = g_from_f(f3, MeridianKind::KindII, -1, 0.0, 0.0, {-1.0, 1.0});
    CHECK(g3.eval(0.4).v1 == doctest::Approx(-1.0));

    // violating the band anywhere in the domain surfaces as a domain error
    const SmoothFn1 f4 = from_expr("f", {-2.0, 2.0}, [](Jet3 u) { return u * u; });
    const SmoothFn1 g4rule = g_from_f(f4, MeridianKind::KindI, +1, 0.0, 0.0, {-0.4, 0.4});
    CHECK_NOTHROW((void)g4rule.eval(0.2));
    CHECK_THROWS_AS(g_from_f(f4, MeridianKind::KindI, +1, 0.0, 0.0, {-2.0, 2.0}),
                    profile_domain_error);
}

TEST_CASE("cmc profiles satisfy the constant mean curvature identity") {
    struct Case {
        MeridianKind kind;
        double a, b;
    };
    for (const Case& c : {Case{MeridianKind::KindI, 1.0, 1.0}, Case{MeridianKind::KindII, 1.0, 1.0},
                          Case{MeridianKind::KindII, 0.5, 0.5}}) {
        const MeridianProfile p = cmc_profile(c.kind, c.a, c.b, 0.0, 1.0, 0.0, {-0.4, 0.4});
        for (double u : linspace(p.domain, 300, 1e-6)) {
            const Jet3 fj = p.f.eval(u);
            const double w = fj.v0 * fj.v2 + fj.v1 * fj.v1 - 1.0;
            const double lhs = w * w;
            const double band = c.kind == MeridianKind::KindI ? 1.0 - fj.v1 * fj.v1
                                                              : fj.v1 * fj.v1 - 1.0;
            const double rhs =
                band * (4.0 * c.a * c.a * fj.v0 * fj.v0 - c.b * c.b);
            CHECK(std::abs(lhs - rhs) < 1e-7);
        }
    }
    CHECK_THROWS_AS(cmc_profile(MeridianKind::KindI, 1.0, 0.0, 0.0, 1.0, 0.0, {-1.0, 1.0}),
                    parameter_error);
    CHECK_THROWS_AS(cmc_profile(MeridianKind::KindI, 0.0, 1.0, 0.0, 1.0, 0.0, {-1.0, 1.0}),
                    parameter_error);
}

TEST_CASE("cmc shift pins the initial slope of g") {
    const double a = 1.0, b = 1.0, f0 = 1.0, gdot0 = 0.55;
    const double c = cmc_shift_for(MeridianKind::KindI, a, b, f0, gdot0, +1);
    const MeridianProfile p = cmc_profile(MeridianKind::KindI, a, b, c, f0, 0.0, {-0.3, 0.3});
    CHECK(p.g.eval(0.0).v1 == doctest::Approx(gdot0).epsilon(1e-9));
}

TEST_CASE("parallel mean curvature profiles") {
    const MeridianProfile p1 = parallel_h_profile(MeridianKind::KindI, ParallelHCase::CaseII, 1.5,
                                                  0.25, 1.0, 0.0, {-1.0, 1.0});
    CHECK(p1.f(0.3) == 1.5);
    CHECK(p1.g(0.0) == doctest::Approx(0.25));
    CHECK(p1.g.eval(0.3).v1 == doctest::Approx(1.0));

    CHECK_THROWS_AS(parallel_h_profile(MeridianKind::KindII, ParallelHCase::CaseII, 1.0, 0.0, 1.0,
                                       0.0, {-1.0, 1.0}),
                    parameter_error);

    const MeridianProfile p2 = parallel_h_profile(MeridianKind::KindI, ParallelHCase::CaseI, 0.5,
                                                  0.8, 1.0, 0.0, {-0.3, 0.3});
    for (double u : linspace(p2.domain, 100, 1e-6)) {
        const Jet3 fj = p2.f.eval(u);
        const double z = (0.8 - 0.5 * fj.v0 * fj.v0) / fj.v0;  // g' as a function of f
        CHECK(fj.v1 * fj.v1 + z * z == doctest::Approx(1.0).epsilon(1e-12));
    }
    // f0 at a band violation (z = 0 there) is rejected
    CHECK_THROWS_AS(parallel_h_profile(MeridianKind::KindI, ParallelHCase::CaseI, 0.5, 0.5, 1.0,
                                       0.0, {-0.3, 0.3}),
                    parameter_error);
}

TEST_CASE("parallel normalized mean curvature constructions") {
    // case (ii) parametric, first kind: unit-speed identity in the parameter
    const MeridianProfile p1 =
        parallel_h0_profile(MeridianKind::KindI, ParallelH0Construction::CaseIIParametric, 1.0,
                            0.0, -1.5, {-1.2, -0.7});
    for (double u : linspace(p1.domain, 100)) {
        const Jet3 fj = p1.f.eval(u);
        const Jet3 gj = p1.g.eval(u);
        CHECK(fj.v1 * fj.v1 + gj.v1 * gj.v1 == doctest::Approx(1.0).epsilon(1e-12));
    }
    // second kind: f'^2 - g'^2 = 1 identically
    const MeridianProfile p2 =
        parallel_h0_profile(MeridianKind::KindII, ParallelH0Construction::CaseIIParametric, 1.0,
                            0.0, 0.5, {0.5, 2.0});
    for (double u : linspace(p2.domain, 100)) {
        const Jet3 fj = p2.f.eval(u);
        const Jet3 gj = p2.g.eval(u);
        CHECK(fj.v1 * fj.v1 - gj.v1 * gj.v1 == doctest::Approx(1.0).epsilon(1e-12));
    }
    // ODE readings carry distinguishable family tags
    const MeridianProfile p3 =
        parallel_h0_profile(MeridianKind::KindI, ParallelH0Construction::CaseIIOdeLinear, 0.5, 0.0,
                            0.25, {-0.3, 0.3});
    CHECK(p3.family == "parallel_h0_ii_ode_linear");
    const MeridianProfile p4 =
        parallel_h0_profile(MeridianKind::KindI, ParallelH0Construction::CaseIIOdeDirect, 1.0,
                            0.0, 1.5, {-0.2, 0.2});
    CHECK(p4.family == "parallel_h0_ii_ode_direct");
    CHECK_THROWS_AS(parallel_h0_profile(MeridianKind::KindI,
                                        ParallelH0Construction::CaseIIOdeDirect, 1.0, 0.0, 0.0,
                                        {-0.2, 0.2}),
                    parameter_error);
}

TEST_CASE("every constructor passes validation on 1000 grid points") {
    std::vector<MeridianProfile> profiles;
    profiles.push_back(flat_profile(MeridianKind::KindI, 0.6, 1.0, 0.0, {-0.5, 0.5}));
    profiles.push_back(flat_profile(MeridianKind::KindII, 1.5, 3.0, 0.0, {-1.0, 1.0}));
    profiles.push_back(constant_k_profile(MeridianKind::KindI, 1.0, 0.0, 0.8, {-1.0, 1.0}));
    profiles.push_back(constant_k_profile(MeridianKind::KindII, 1.0, 0.0, 2.0, {0.5, 1.5}));
    profiles.push_back(minimal_profile(MeridianKind::KindI, 0.0, 1.0, 0.0, {-1.0, 1.0}));
    profiles.push_back(minimal_profile(MeridianKind::KindII, 0.0, -1.0, 0.0, {1.2, 2.5}));
    profiles.push_back(cmc_profile(MeridianKind::KindI, 1.0, 1.0, 0.0, 1.0, 0.0, {-0.3, 0.3}));
    profiles.push_back(cmc_profile(MeridianKind::KindII, 1.0, 1.0, 0.0, 1.0, 0.0, {-0.5, 0.5}));
    profiles.push_back(parallel_h_profile(MeridianKind::KindI, ParallelHCase::CaseI, 0.5, 0.8,
                                          1.0, 0.0, {-0.3, 0.3}));
    profiles.push_back(parallel_h_profile(MeridianKind::KindI, ParallelHCase::CaseII, 1.0, 0.0,
                                          1.0, 0.0, {-1.0, 1.0}));
    profiles.push_back(parallel_h_profile(MeridianKind::KindII, ParallelHCase::CaseI, 0.5, 0.5,
                                          1.0, 0.0, {-0.3, 0.3}));
    profiles.push_back(parallel_h0_profile(MeridianKind::KindI, ParallelH0Construction::CaseI,
                                           0.0, 1.0, 0.0, {-1.0, 1.0}));
    profiles.push_back(parallel_h0_profile(MeridianKind::KindI,
                                           ParallelH0Construction::CaseIIParametric, 1.0, 0.0,
                                           -1.5, {-1.2, -0.7}));
    profiles.push_back(parallel_h0_profile(MeridianKind::KindI,
                                           ParallelH0Construction::CaseIIOdeDirect, 1.0, 0.0, 1.5,
                                           {-0.2, 0.2}));
    profiles.push_back(parallel_h0_profile(MeridianKind::KindII,
                                           ParallelH0Construction::CaseIIOdeDirect, 1.0, 0.0, 0.5,
                                           {-0.3, 0.3}));
    for (const MeridianProfile& p : profiles) {
        const std::vector<double> grid = linspace(p.domain, 1000, 1e-9);
        const ProfileResidualReport r = profile_validate(p, grid);
        INFO(p.family << " kind " << to_string(p.kind));
        CHECK(r.max_constraint_residual < 1e-8);
        CHECK(r.min_f > 0.0);
        CHECK(r.min_band_margin > 0.0);
    }
}
