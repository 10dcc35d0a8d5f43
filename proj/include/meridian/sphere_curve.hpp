#pragma once

#include <array>
#include <vector>

#include "meridian/smooth_fn.hpp"
#include "meridian/vec4.hpp"

namespace meridian {

/// The 2-sphere carrying the generating curve: de Sitter S^2_1(1) for first-kind
/// surfaces (timelike curve, frame Gram diag(1,-1,1)), hyperbolic H^2(-1) for
/// second-kind (Gram diag(-1,1,1)).
enum class SphereKind { DeSitter, Hyperbolic };

inline std::array<double, 3> frame_signature(SphereKind k) {
    return k == SphereKind::DeSitter ? std::array<double, 3>{1.0, -1.0, 1.0}
                                     : std::array<double, 3>{-1.0, 1.0, 1.0};
}

struct FramePoint {
    Vec4 l, t, n;
    double kappa = 0.0;
};

/// Curve c on S^2_1(1) or H^2(-1) with prescribed curvature kappa(v), realized by
/// integrating the Frenet system l' = t, t' = kappa n + l, n' = +/- kappa t
/// (sign by kind). Immutable after construction; dense output at the integration
/// grid with cubic Hermite interpolation (slopes from the Frenet right-hand side).
class SphereCurve {
public:
    SphereKind kind = SphereKind::DeSitter;
    SmoothFn1 kappa;
    Interval domain;
    double step = 1e-3;

    FramePoint eval(double v) const;
    FramePoint frame0() const;

    /// Max Gram-matrix deviation from the kind's signature over the stored nodes.
    double max_gram_drift() const;
    /// Gram deviation of the interpolated frame at v.
    double gram_residual(double v) const;
    /// Recovered curvature <t'(v), n(v)> from the stored right-hand sides.
    double recovered_kappa(double v) const;

    std::size_t node_count() const { return states_.size(); }

    friend SphereCurve frenet_integrate(SphereKind kind, const SmoothFn1& kappa,
                                        const std::array<Vec4, 3>& frame0, Interval v_domain,
                                        double h);

private:
    using State = std::array<Vec4, 3>;  // (l, t, n)
    double v_start_ = 0.0;
    std::size_t anchor_ = 0;  // node index carrying the initial frame
    std::vector<State> states_, derivs_;
};

/// Integrates the kind's Frenet system from frame0 (which must satisfy the Gram
/// signature within 1e-12 and have vanishing x1 components).
SphereCurve frenet_integrate(SphereKind kind, const SmoothFn1& kappa,
                             const std::array<Vec4, 3>& frame0, Interval v_domain,
                             double h = 1e-3);

/// Canonical initial frames: DeSitter (l,t,n) = (e2,e4,e3); Hyperbolic (e4,e2,e3).
std::array<Vec4, 3> canonical_frame(SphereKind kind);

/// Constant-curvature curve from the canonical initial frame.
SphereCurve canonical_curve(SphereKind kind, double kappa_const, Interval v_domain = {0.0, 1.0},
                            double h = 1e-3);

}  // namespace meridian
