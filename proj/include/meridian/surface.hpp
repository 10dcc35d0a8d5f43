#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "meridian/profile.hpp"
#include "meridian/sphere_curve.hpp"
#include "meridian/vec4.hpp"

namespace meridian {

/// A pair of components along the normal frame (N1, N2). The normal space is
/// positive definite, so the norm is Euclidean.
struct NormalPair {
    double n1 = 0.0, n2 = 0.0;
    double norm2() const { return n1 * n1 + n2 * n2; }
    double norm() const { return std::sqrt(norm2()); }
};

struct TangentNormalFrame {
    Vec4 X, Y, N1, N2;
};

/// Per-point record of the surface invariants and the residual inputs used by the
/// verification suites. DH0 entries are NaN on the near-minimal locus.
struct InvariantReport {
    double u = 0, v = 0;
    double E = 0, F = 0, G = 0;
    double kappa_m = 0, kappa = 0;
    double K_closed = 0, K_numeric = 0;
    double Kperp = 0;
    double H1 = 0, H2 = 0, Hnorm2 = 0;
    NormalPair DH_X, DH_Y, DH0_X, DH0_Y;
};

/// Meridian surface z(u,v) = f(u) l(v) + g(u) e1 assembled from a profile and a
/// sphere curve (de Sitter for the first kind, hyperbolic for the second).
class MeridianSurface {
public:
    MeridianSurface(MeridianProfile profile, SphereCurve curve);

    MeridianKind kind() const { return profile_.kind; }
    const MeridianProfile& profile() const { return profile_; }
    const SphereCurve& curve() const { return curve_; }
    Interval u_domain() const { return profile_.domain; }
    Interval v_domain() const { return curve_.domain; }
    std::string describe() const;

    Vec4 position(double u, double v) const;

    /// Closed-form (E, F, G): KindI (1, 0, -f^2), KindII (-1, 0, f^2).
    std::array<double, 3> first_fundamental(double u, double v) const;
    /// Finite-difference oracle for (E, F, G).
    std::array<double, 3> first_fundamental_numeric(double u, double v, double h = 1e-5) const;

    TangentNormalFrame frame(double u, double v) const;
    /// Gram deviation of the frame from its declared signature at (u,v).
    double frame_gram_residual(double u, double v) const;

    double kappa_m(double u) const { return profile_.kappa_m(u); }

    double gauss_closed(double u) const;
    /// Definitional Gauss curvature from finite-difference second derivatives of the
    /// position, projected to the normal space (plain second-order stencil).
    double gauss_numeric_plain(double u, double v, double h) const;
    /// One Richardson extrapolation of the plain stencil.
    double gauss_numeric(double u, double v, double h = 1e-3) const;

    /// Curvature of the normal connection via nested finite-difference D-derivatives
    /// of N1; identically zero for every meridian surface.
    double normal_curvature(double u, double v, double h = 1e-4) const;

    /// Mean curvature components along (N1, N2) with the sign branch carried by g'.
    NormalPair mean_curvature(double u, double v) const;
    /// Same quantity assembled as (1/2)(sigma(x,x) - sigma(y,y)) from the
    /// derivative-formula tables (independent algebraic route through kappa_m).
    NormalPair mean_curvature_sigma(double u, double v) const;
    double hnorm2(double u, double v) const { return mean_curvature(u, v).norm2(); }

    /// Closed-form D_X H and D_Y H (u-derivatives from jets, v-derivative from kappa').
    std::pair<NormalPair, NormalPair> normal_derivative_H(double u, double v) const;
    /// Ambient finite-difference oracle: difference the ambient H field and project.
    std::pair<NormalPair, NormalPair> normal_derivative_H_fd(double u, double v,
                                                             double h = 1e-4) const;

    /// H0 = H / sqrt(<H,H>); throws near_minimal_error when <H,H> <= tau_h.
    NormalPair normalized_H(double u, double v) const;
    std::pair<NormalPair, NormalPair> normal_derivative_H0(double u, double v) const;
    std::pair<NormalPair, NormalPair> normal_derivative_H0_fd(double u, double v,
                                                              double h = 1e-4) const;

    InvariantReport report(double u, double v) const;

    static constexpr double tau_h = 1e-10;  // near-minimal threshold for H0

private:
    MeridianProfile profile_;
    SphereCurve curve_;
};

struct HyperplaneResult {
    bool contained = false;
    Vec4 normal;  // Minkowski normal of the fitted hyperplane (when contained)
    double max_residual = 0.0;
    double tau = 0.0;  // threshold actually used (1e-7 x cloud diameter)
};

/// Least-squares affine-hyperplane fit to positions sampled on a u x v grid.
HyperplaneResult hyperplane_check(const MeridianSurface& s, std::span<const double> us,
                                  std::span<const double> vs);

struct ClassifyTolerances {
    double flat = 1e-8;
    double constant_k = 1e-8;
    double minimal = 1e-8;
    double cmc = 1e-6;
    double parallel_h = 1e-6;
    double parallel_h0 = 1e-6;
    double flat_normal = 1e-6;
};

/// Residual-threshold classification over a grid; every meridian surface is expected
/// to collect at least flat_normal_connection.
std::vector<std::string> classify(const MeridianSurface& s, int nu, int nv,
                                  const ClassifyTolerances& tol = {});

/// n points across iv shrunk by an absolute margin on both sides.
std::vector<double> grid_points(Interval iv, int n, double margin);
/// Default interior margins keeping finite-difference stencils inside the domains.
double default_u_margin(const MeridianSurface& s);
double default_v_margin(const MeridianSurface& s);

/// Row-major (u outer, v inner) grid of reports; rows may be computed on `workers`
/// threads, the result order is deterministic.
std::vector<InvariantReport> sample_grid(const MeridianSurface& s, int nu, int nv,
                                         int workers = 1);

/// CSV with the documented fixed column order, floats at 17 significant digits.
void write_csv(std::ostream& os, const std::vector<InvariantReport>& rows);

}  // namespace meridian
