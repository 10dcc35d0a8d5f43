#include "meridian/sphere_curve.hpp"

#include <cmath>
#include <string>

#include "meridian/errors.hpp"

namespace meridian {
namespace {

using State = std::array<Vec4, 3>;

State axpy(const State& a, double s, const State& b) {
    return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}

State frenet_rhs(SphereKind kind, const State& s, double kappa) {
    const Vec4 &l = s[0], &t = s[1], &n = s[2];
    const double ns = kind == SphereKind::DeSitter ? kappa : -kappa;
    return {t, kappa * n + l, ns * t};
}

}  // namespace

std::array<Vec4, 3> canonical_frame(SphereKind kind) {
    return kind == SphereKind::DeSitter
               ? std::array<Vec4, 3>{Vec4::e2(), Vec4::e4(), Vec4::e3()}
               : std::array<Vec4, 3>{Vec4::e4(), Vec4::e2(), Vec4::e3()};
}

SphereCurve frenet_integrate(SphereKind kind, const SmoothFn1& kappa,
                             const std::array<Vec4, 3>& frame0, Interval v_domain, double h) {
    // Validate the initial frame: Gram signature within 1e-12, no e1 component.
    const auto sig = frame_signature(kind);
    const GramMatrix g0 = gram_matrix(std::span<const Vec4>(frame0.data(), 3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double want = i == j ? sig[i] : 0.0;
            if (std::abs(g0(i, j) - want) > 1e-12)
                throw frame_error("initial frame violates Gram entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + "): got " + std::to_string(g0(i, j)) +
                                  ", want " + std::to_string(want));
        }
    for (const Vec4& v : frame0)
        if (std::abs(v.x1) > 0.0)
            throw frame_error("initial frame must lie in span{e2,e3,e4} (x1 = 0)");
    if (v_domain.empty()) throw parameter_error("frenet_integrate: empty v domain");

    SphereCurve c;
    c.kind = kind;
    c.kappa = kappa;
    c.step = h;

    const double anchor_v = v_domain.contains(0.0) ? 0.0 : v_domain.lo;
    const int nb = int(std::ceil((anchor_v - v_domain.lo) / h - 1e-9));
    const int nf = int(std::ceil((v_domain.hi - anchor_v) / h - 1e-9));

    auto march = [&](double dir, int steps) {
        std::vector<State> out;
        State s = frame0;
        double v = anchor_v;
        for (int i = 0; i < steps; ++i) {
            const double hd = dir * h;
            const State k1 = frenet_rhs(kind, s, kappa(v));
            const State s2 = axpy(s, 0.5 * hd, k1);
            const State k2 = frenet_rhs(kind, s2, kappa(v + 0.5 * hd));
            const State s3 = axpy(s, 0.5 * hd, k2);
            const State k3 = frenet_rhs(kind, s3, kappa(v + 0.5 * hd));
            const State s4 = axpy(s, hd, k3);
            const State k4 = frenet_rhs(kind, s4, kappa(v + hd));
            for (int j = 0; j < 3; ++j)
                s[j] += (hd / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            v += hd;
            out.push_back(s);
        }
        return out;
    };

    const std::vector<State> bwd = march(-1.0, nb);
    const std::vector<State> fwd = march(+1.0, nf);

    c.anchor_ = std::size_t(nb);
    c.v_start_ = anchor_v - h * double(nb);
    c.domain = {c.v_start_, anchor_v + h * double(nf)};
    c.states_.resize(std::size_t(nb + nf + 1));
    for (int i = 0; i < nb; ++i) c.states_[std::size_t(nb - 1 - i)] = bwd[std::size_t(i)];
    c.states_[c.anchor_] = frame0;
    for (int i = 0; i < nf; ++i) c.states_[std::size_t(nb + 1 + i)] = fwd[std::size_t(i)];
    c.derivs_.resize(c.states_.size());
    for (std::size_t i = 0; i < c.states_.size(); ++i) {
        const double v = c.v_start_ + h * double(i);
        c.derivs_[i] = frenet_rhs(kind, c.states_[i], kappa(v));
    }
    return c;
}

FramePoint SphereCurve::eval(double v) const {
    if (!domain.contains(v, 1e-12 * (1.0 + std::abs(v))))
        throw interval_error("SphereCurve", v, domain.lo, domain.hi);
    const double s = (v - v_start_) / step;
    const double r = std::round(s);
    FramePoint fp;
    fp.kappa = kappa(v);
    if (std::abs(s - r) < 1e-9 && r >= 0.0 && std::size_t(r) < states_.size()) {
        const State& st = states_[std::size_t(r)];
        fp.l = st[0];
        fp.t = st[1];
        fp.n = st[2];
        return fp;
    }
    std::size_t i = std::size_t(std::max(0.0, std::floor(s)));
    if (i >= states_.size() - 1) i = states_.size() - 2;
    const double t = s - double(i);
    const double t2 = t * t, t3 = t2 * t;
    const double c0 = 2 * t3 - 3 * t2 + 1, c1 = t3 - 2 * t2 + t;
    const double c2 = -2 * t3 + 3 * t2, c3 = t3 - t2;
    State out;
    for (int j = 0; j < 3; ++j)
        out[std::size_t(j)] = c0 * states_[i][std::size_t(j)] +
                              (c1 * step) * derivs_[i][std::size_t(j)] +
                              c2 * states_[i + 1][std::size_t(j)] +
                              (c3 * step) * derivs_[i + 1][std::size_t(j)];
    fp.l = out[0];
    fp.t = out[1];
    fp.n = out[2];
    return fp;
}

FramePoint SphereCurve::frame0() const {
    const State& st = states_[anchor_];
    return {st[0], st[1], st[2], kappa(v_start_ + step * double(anchor_))};
}

double SphereCurve::max_gram_drift() const {
    const auto sig = frame_signature(kind);
    double worst = 0.0;
    for (const State& st : states_) {
        const GramMatrix g = gram_matrix(std::span<const Vec4>(st.data(), 3));
        worst = std::max(worst, g.max_deviation(sig));
    }
    return worst;
}

double SphereCurve::gram_residual(double v) const {
    const FramePoint fp = eval(v);
    const std::array<Vec4, 3> fr{fp.l, fp.t, fp.n};
    return gram_matrix(std::span<const Vec4>(fr.data(), 3)).max_deviation(frame_signature(kind));
}

double SphereCurve::recovered_kappa(double v) const {
    const double s = (v - v_start_) / step;
    std::size_t i = std::size_t(std::lround(std::min(std::max(s, 0.0), double(states_.size() - 1))));
    const Vec4 tprime = derivs_[i][1];
    return mink_dot(tprime, states_[i][2]);
}

SphereCurve canonical_curve(SphereKind kind, double kappa_const, Interval v_domain, double h) {
    return frenet_integrate(kind, constant_fn(kappa_const), canonical_frame(kind), v_domain, h);
}

}  // namespace meridian
