#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meridian/verify.hpp"

using namespace meridian;

namespace {

MeridianSurface minimal_surface() {
    return {minimal_profile(MeridianKind::KindI, 0.0, 1.0, 0.0, {-1.0, 1.0}),
            canonical_curve(SphereKind::DeSitter, 0.0, {-1.0, 1.0})};
}

MeridianSurface cmc_surface() {
    return {cmc_profile(MeridianKind::KindI, 1.0, 1.0, 0.0, 1.0, 0.0, {-0.3, 0.3}),
            canonical_curve(SphereKind::DeSitter, 1.0, {-1.0, 1.0})};
}

MeridianSurface tube_surface() {
    // f = a, g = u, constant-curvature directrix: parallel mean curvature vector
    return {parallel_h_profile(MeridianKind::KindI, ParallelHCase::CaseII, 1.0, 0.0, 1.0, 0.0,
                               {-1.0, 1.0}),
            canonical_curve(SphereKind::DeSitter, 1.0, {-1.0, 1.0})};
}

MeridianSurface parallel_h0_surface(ParallelH0Construction con) {
    MeridianProfile p =
        con == ParallelH0Construction::CaseI
            ? parallel_h0_profile(MeridianKind::KindI, con, 0.0, 1.0, 0.0, {-1.0, 1.0})
            : parallel_h0_profile(MeridianKind::KindI, con, 1.0, 0.0,
                                  con == ParallelH0Construction::CaseIIParametric ? -1.5 : 1.5,
                                  con == ParallelH0Construction::CaseIIParametric
                                      ? Interval{-1.2, -0.7}
                                      : Interval{-0.2, 0.2});
    return {std::move(p), canonical_curve(SphereKind::DeSitter, 2.0, {-1.0, 1.0})};
}

MeridianSurface generic_surface() {
    const SmoothFn1 k =
        from_expr("kappa", {-1.0, 1.0}, [](Jet3 v) { return sin(2.0 * v + 0.3); });
    return {constant_k_profile(MeridianKind::KindI, 1.0, 0.1, 0.8, {-1.0, 1.0}),
            frenet_integrate(SphereKind::DeSitter, k, canonical_frame(SphereKind::DeSitter),
                             {-1.0, 1.0})};
}

const Certificate& find_cert(const std::vector<Certificate>& certs, const std::string& prefix) {
    for (const Certificate& c : certs)
        if (c.property.rfind(prefix, 0) == 0) return c;
    REQUIRE(false);
    return certs.front();
}

}  // namespace

TEST_CASE("property names round-trip") {
    for (Property p : {Property::Flat, Property::ConstantK, Property::Minimal, Property::CMC,
                       Property::ParallelH, Property::ParallelH0,
                       Property::FlatNormalConnection, Property::HyperplaneContained})
        CHECK(property_from_name(property_name(p)) == p);
    CHECK(property_from_name("parallel-h0") == Property::ParallelH0);
    CHECK_FALSE(property_from_name("no_such_property").has_value());
}

TEST_CASE("minimal surface certifies minimal, hyperplane, and flat normal connection") {
    const auto certs = run_suite(minimal_surface(),
                                 {PropertySpec::make(Property::Minimal),
                                  PropertySpec::make(Property::HyperplaneContained),
                                  PropertySpec::make(Property::FlatNormalConnection)},
                                 21, 21);
    REQUIRE(certs.size() == 3);
    for (const Certificate& c : certs) {
        INFO(c.property);
        CHECK(c.pass);
    }
    CHECK(find_cert(certs, "minimal").max_residual < 1e-10);
}

TEST_CASE("cmc surface certifies its target and fails a wrong one") {
    const MeridianSurface s = cmc_surface();
    const auto pass = run_suite(s, {PropertySpec::make(Property::CMC, 1.0)}, 15, 15);
    CHECK(pass.front().pass);
    CHECK(pass.front().max_residual < 1e-8);
    const auto fail = run_suite(s, {PropertySpec::make(Property::CMC, 1.25)}, 15, 15);
    CHECK_FALSE(fail.front().pass);
    CHECK(fail.front().max_residual == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("parallel mean curvature implies constant mean curvature and a hyperplane") {
    const MeridianSurface s = tube_surface();
    const double hnorm = std::sqrt(0.5);  // sqrt((1 + kappa^2)) / (2 a)
    const auto certs = run_suite(s,
                                 {PropertySpec::make(Property::ParallelH),
                                  PropertySpec::make(Property::CMC, hnorm),
                                  PropertySpec::make(Property::HyperplaneContained)},
                                 15, 15);
    for (const Certificate& c : certs) {
        INFO(c.property);
        CHECK(c.pass);
    }
}

TEST_CASE("parallel normalized mean curvature: constructions differ") {
    // minimal-type profile over a curving directrix
    {
        const auto certs = run_suite(parallel_h0_surface(ParallelH0Construction::CaseI),
                                     {PropertySpec::make(Property::ParallelH0)}, 15, 15);
        CHECK(certs.front().pass);
        CHECK(certs.front().max_residual < 1e-8);
        CHECK(certs.front().dh_witness > 1e-2);
    }
    {
        const auto certs = run_suite(parallel_h0_surface(ParallelH0Construction::CaseIIOdeDirect),
                                     {PropertySpec::make(Property::ParallelH0)}, 15, 15);
        CHECK(certs.front().pass);
    }
    {
        const auto certs = run_suite(parallel_h0_surface(ParallelH0Construction::CaseIIOdeLinear),
                                     {PropertySpec::make(Property::ParallelH0)}, 15, 15);
        CHECK_FALSE(certs.front().pass);
        CHECK(certs.front().max_residual > 1e-2);
    }
}

TEST_CASE("parallel H0 witness: a parallel-H surface cannot certify") {
    // DH = 0 everywhere, so the non-parallel witness must fail even though DH0 = 0
    const auto certs =
        run_suite(tube_surface(), {PropertySpec::make(Property::ParallelH0)}, 11, 11);
    CHECK_FALSE(certs.front().pass);
    CHECK(certs.front().note.find("witness") != std::string::npos);
}

TEST_CASE("certificates serialize deterministically") {
    const MeridianSurface s = generic_surface();
    const std::vector<PropertySpec> specs = {PropertySpec::make(Property::ConstantK, 1.0),
                                             PropertySpec::make(Property::FlatNormalConnection)};
    const std::string j1 = certificates_to_json(run_suite(s, specs, 11, 11));
    const std::string j2 = certificates_to_json(run_suite(s, specs, 11, 11));
    CHECK(j1 == j2);
    CHECK(j1.find("\"schema\": 1") != std::string::npos);
    CHECK(j1.find("constant_k(K=1)") != std::string::npos);
    CHECK(j1.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("sweeps skip invalid cells instead of aborting") {
    std::vector<SweepCell> cells;
    cells.push_back({"ok", [] { return minimal_surface(); }});
    cells.push_back({"bad", [] {
                         // minimal first kind needs b - a^2 > 0
                         return MeridianSurface{
                             minimal_profile(MeridianKind::KindI, 2.0, 1.0, 0.0, {-1.0, 1.0}),
                             canonical_curve(SphereKind::DeSitter, 0.0, {-1.0, 1.0})};
                     }});
    const auto results = sweep(cells, {PropertySpec::make(Property::Minimal)}, 11, 11);
    REQUIRE(results.size() == 2);
    CHECK_FALSE(results[0].skipped);
    CHECK(results[0].certificates.front().pass);
    CHECK(results[1].skipped);
    CHECK(results[1].skip_reason.find("b - a^2") != std::string::npos);

    std::ostringstream os;
    sweep_summary_csv(os, results);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "cell,property,pass,max_residual,tolerance,worst_u,worst_v,note");
    CHECK(os.str().find("\"ok\",minimal,1,") != std::string::npos);
    CHECK(os.str().find("\"bad\",skipped") != std::string::npos);
}
