#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "meridian/errors.hpp"
#include "meridian/jet.hpp"

namespace meridian {

/// Closed interval of the real line.
struct Interval {
    double lo = 0.0, hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double u, double slack = 0.0) const { return u >= lo - slack && u <= hi + slack; }
    double clamp(double u) const { return std::min(hi, std::max(lo, u)); }
    bool empty() const { return !(lo < hi); }
};

/// A real-to-Jet3 evaluation rule with a validity interval.
/// Evaluation outside the interval throws interval_error naming the offending bound.
struct SmoothFn1 {
    std::string name;
    Interval domain{-1e300, 1e300};
    std::function<Jet3(double)> rule;

    Jet3 eval(double u) const {
        if (!domain.contains(u, 1e-12 * (1.0 + std::abs(u))))
            throw interval_error(name.empty() ? "SmoothFn1" : name, u, domain.lo, domain.hi);
        Jet3 j = rule(u);
        if (!j.finite())
            throw interval_error((name.empty() ? "SmoothFn1" : name) + " (non-finite jet)", u,
                                 domain.lo, domain.hi);
        return j;
    }

    /// Value only.
    double operator()(double u) const { return eval(u).v0; }
};

/// Jet of fn at u (thin named wrapper over SmoothFn1::eval).
inline Jet3 jet_eval(const SmoothFn1& fn, double u) { return fn.eval(u); }

/// Builds a SmoothFn1 from a closed-form expression on jets, e.g.
/// from_expr("f", dom, [](Jet3 u){ return sqrt(u*u + 1.0); }).
inline SmoothFn1 from_expr(std::string name, Interval dom, std::function<Jet3(Jet3)> expr) {
    SmoothFn1 f;
    f.name = std::move(name);
    f.domain = dom;
    f.rule = [e = std::move(expr)](double u) { return e(Jet3::variable(u)); };
    return f;
}

inline SmoothFn1 constant_fn(double c) {
    SmoothFn1 f;
    f.name = "const";
    f.rule = [c](double) { return Jet3::constant(c); };
    return f;
}

/// Dense table of (value, slope) samples with cubic Hermite interpolation between nodes.
/// Slopes come from the generating ODE's right-hand side, so the interpolant is O(h^4).
class HermiteTable {
public:
    HermiteTable() = default;
    HermiteTable(double u0, double h, std::vector<double> values, std::vector<double> slopes)
        : u0_(u0), h_(h), y_(std::move(values)), d_(std::move(slopes)) {}

    double front_u() const { return u0_; }
    double back_u() const { return u0_ + h_ * double(y_.size() - 1); }
    std::size_t size() const { return y_.size(); }

    double eval(double u) const {
        const double s = (u - u0_) / h_;
        std::size_t i = std::size_t(std::max(0.0, std::floor(s)));
        if (i >= y_.size() - 1) i = y_.size() - 2;
        const double t = s - double(i);
        const double y0 = y_[i], y1 = y_[i + 1];
        const double m0 = d_[i] * h_, m1 = d_[i + 1] * h_;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
               (t3 - t2) * m1;
    }

private:
    double u0_ = 0.0, h_ = 1.0;
    std::vector<double> y_, d_;
};

/// Antiderivative of w over dom with value y0 at u0. The derivative's jet supplies
/// components 1..3 of the result, so the only numerical content is the value itself
/// (classical RK4 quadrature at step h with Hermite dense output).
inline SmoothFn1 antiderivative(const SmoothFn1& w, Interval dom, double u0, double y0,
                                std::string name = "antiderivative", double h = 2.5e-4) {
    const int n = std::max(2, int(std::ceil(dom.length() / h)) + 1);
    const double step = dom.length() / double(n - 1);
    std::vector<double> y(n), d(n);
    // RK4 for y' = w(u); quadrature of a known function of u.
    auto rhs = [&w](double u) { return w.eval(u).v0; };
    // integrate forward from dom.lo with a provisional offset, then shift so y(u0) = y0
    y[0] = 0.0;
    d[0] = rhs(dom.lo);
    for (int i = 1; i < n; ++i) {
        const double u = dom.lo + step * double(i - 1);
        const double k1 = d[i - 1];
        const double km = rhs(u + 0.5 * step);
        const double k4 = rhs(u + step);
        y[i] = y[i - 1] + step / 6.0 * (k1 + 4.0 * km + k4);
        d[i] = k4;
    }
    auto table = std::make_shared<HermiteTable>(dom.lo, step, std::move(y), std::move(d));
    const double shift = y0 - table->eval(dom.clamp(u0));

    SmoothFn1 f;
    f.name = std::move(name);
    f.domain = dom;
    auto wp = std::make_shared<SmoothFn1>(w);
    f.rule = [table, shift, wp](double u) {
        const Jet3 wj = wp->eval(u);
        return Jet3{table->eval(u) + shift, wj.v0, wj.v1, wj.v2};
    };
    return f;
}

}  // namespace meridian
