#pragma once

#include <span>
#include <string>

#include "meridian/smooth_fn.hpp"

namespace meridian {

enum class MeridianKind { KindI, KindII };

inline const char* to_string(MeridianKind k) { return k == MeridianKind::KindI ? "I" : "II"; }

/// Meridian curve m = (f(u), g(u)) under the kind-dependent arc-length constraint:
/// KindI  f'^2 + g'^2 = 1, f > 0;  KindII  f'^2 - g'^2 = 1, f > 0.
struct MeridianProfile {
    MeridianKind kind = MeridianKind::KindI;
    SmoothFn1 f, g;
    int eps_f = +1, eps_g = +1;
    Interval domain;
    bool truncated = false;  // ODE integration stopped before the requested domain end
    std::string family;

    Jet3 f_jet(double u) const { return f.eval(u); }
    Jet3 g_jet(double u) const { return g.eval(u); }

    /// Meridian curvature kappa_m = f' g'' - g' f''.
    double kappa_m(double u) const {
        const Jet3 fj = f.eval(u), gj = g.eval(u);
        return fj.v1 * gj.v2 - gj.v1 * fj.v2;
    }

    /// Kind band margin: 1 - f'^2 (KindI) or f'^2 - 1 (KindII). Must stay positive.
    double band_margin(double u) const {
        const double fd = f.eval(u).v1;
        return kind == MeridianKind::KindI ? 1.0 - fd * fd : fd * fd - 1.0;
    }
};

/// Residuals of the defining constraints on a grid (report-only, never throws).
struct ProfileResidualReport {
    double max_constraint_residual = 0.0;  // |f'^2 +/- g'^2 - 1|
    double min_f = 0.0;
    double min_band_margin = 0.0;
    double worst_u = 0.0;  // argmax of the constraint residual
};

/// Completes g from f via the arc-length constraint: g' = eps_g sqrt(1 - f'^2)
/// (KindI) or eps_g sqrt(f'^2 - 1) (KindII), with g(u0) = g0. The jets of g are
/// synthesized from the constraint, the value by quadrature.
SmoothFn1 g_from_f(const SmoothFn1& f, MeridianKind kind, int eps_g, double u0, double g0,
                   Interval dom);

/// f = a u + b (meridian is a straight line, K = 0). KindI needs a^2 < 1, KindII a^2 > 1.
MeridianProfile flat_profile(MeridianKind kind, double a, double b, double c, Interval requested,
                             int eps_f = +1, int eps_g = +1);

/// f'' + K f = 0 (KindI) or f'' - K f = 0 (KindII); the surface has Gauss curvature K.
MeridianProfile constant_k_profile(MeridianKind kind, double K, double a1, double a2,
                                   Interval requested, int eps_f = +1, int eps_g = +1);

/// f = sqrt(u^2 + 2 a u + b); satisfies f f'' + f'^2 - 1 = 0 identically.
/// KindI needs b - a^2 > 0, KindII a^2 - b > 0. Paired with a zero-curvature
/// sphere curve the surface is minimal.
MeridianProfile minimal_profile(MeridianKind kind, double a, double b, double c, Interval requested,
                                int eps_f = +1, int eps_g = +1);

/// Profile with ||H|| = a when paired with a constant-curvature (kappa = b) curve;
/// f integrates f' = phi(f) from (u0, f0).
MeridianProfile cmc_profile(MeridianKind kind, double a, double b, double c, double f0, double u0,
                            Interval requested, int eps_f = +1, int eps_g = +1);

/// Integration constant c for cmc_profile that makes g'(u0) = gdot0 at f(u0) = f0
/// (same eps_g branch must be passed to cmc_profile).
double cmc_shift_for(MeridianKind kind, double a, double b, double f0, double gdot0,
                     int eps_g = +1);

enum class ParallelHCase { CaseI, CaseII };

/// Parallel mean curvature families. CaseI: f' = phi(f) with
/// phi(t) = (1/t) sqrt(t^2 - (c - a t^2)^2) (KindI) or (1/t) sqrt(t^2 + (c + a t^2)^2)
/// (KindII), paired with geodesic curves. CaseII: f = a, g = eps_g u + b, paired with
/// constant-curvature curves (KindI only; the second-kind arc-length constraint has no
/// constant-f solution).
MeridianProfile parallel_h_profile(MeridianKind kind, ParallelHCase pcase, double a, double c_or_b,
                                   double f0, double u0, Interval requested, int eps_f = +1,
                                   int eps_g = +1);

/// Candidate constructions for the parallel normalized mean curvature family.
/// CaseI reuses the minimal-type profile (paired with non-vanishing curvature curves).
/// The three CaseII variants realize the different readings of the classification:
///  - CaseIIParametric: the displayed f(t), g(t) with t as arc-length parameter;
///  - CaseIIOdeLinear: f' = phi(f) with the linear-ODE solution z = a t - c (KindI);
///  - CaseIIOdeDirect: f' = phi(f) with the direct-substitution solution z = a/t - c.
/// For KindII the linear and direct readings coincide (z = a/t + c).
/// Verification reports which variant realizes D H0 = 0.
enum class ParallelH0Construction { CaseI, CaseIIParametric, CaseIIOdeLinear, CaseIIOdeDirect };

MeridianProfile parallel_h0_profile(MeridianKind kind, ParallelH0Construction con, double a,
                                    double b, double c, Interval requested, int eps_f = +1,
                                    int eps_g = +1, double f0 = 1.0, double u0 = 0.0);

ProfileResidualReport profile_validate(const MeridianProfile& p, std::span<const double> grid);

namespace detail {
/// Band clip margin near f'^2 = 1 singular points.
inline constexpr double band_margin_clip = 1e-4;
/// Lower bound on phi^2 when integrating f' = phi(f) (turning points are non-Lipschitz).
inline constexpr double phi_floor = 1e-8;
}  // namespace detail

}  // namespace meridian
