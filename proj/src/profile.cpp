#include "meridian/profile.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

namespace meridian {
namespace {

constexpr double f_floor = 1e-6;

Jet3 logabs(const Jet3& x) {
    if (x.v0 == 0.0) throw primitive_domain_error("logabs", x.v0);
    return x.v0 > 0.0 ? log(x) : log(-x);
}

/// Largest subinterval of req on which ok holds, found by scanning; the anchor hint is
/// moved to the nearest valid scan point if it is itself invalid.
Interval scan_valid(Interval req, double anchor, const std::function<bool(double)>& ok,
                    const std::string& what, int n = 2001) {
    if (req.empty()) throw parameter_error(what + ": empty requested domain");
    const double step = req.length() / double(n - 1);
    auto u_at = [&](int i) { return req.lo + step * double(i); };
    auto safe_ok = [&](int i) {
        try {
            return ok(u_at(i));
        } catch (const error&) {
            return false;
        }
    };
    int ia = int(std::lround((req.clamp(anchor) - req.lo) / step));
    ia = std::min(n - 1, std::max(0, ia));
    if (!safe_ok(ia)) {
        int found = -1;
        for (int d = 1; d < n; ++d) {
            if (ia - d >= 0 && safe_ok(ia - d)) { found = ia - d; break; }
            if (ia + d < n && safe_ok(ia + d)) { found = ia + d; break; }
        }
        if (found < 0) throw parameter_error(what + ": empty valid domain");
        ia = found;
    }
    int lo = ia, hi = ia;
    while (lo > 0 && safe_ok(lo - 1)) --lo;
    while (hi < n - 1 && safe_ok(hi + 1)) ++hi;
    // keep one scan step away from the first invalid sample
    if (lo > 0) ++lo;
    if (hi < n - 1) --hi;
    if (hi - lo < 4) throw parameter_error(what + ": empty valid domain");
    return {u_at(lo), u_at(hi)};
}

struct OdeResult {
    SmoothFn1 f;
    Interval dom;
    bool truncated = false;
};

/// Integrates f' = eps_f * phi(f) from (u0, f0) across req with fixed-step RK4,
/// stopping where t_ok fails. The returned jets come from phi, so identities phi
/// satisfies in t hold pointwise to machine precision regardless of integration error.
OdeResult integrate_profile_ode(const SmoothFn1& phi, const std::function<bool(double)>& t_ok,
                                Interval req, double u0, double f0, int eps_f,
                                const std::string& name, double h = 5e-4) {
    if (!req.contains(u0)) throw parameter_error(name + ": u0 outside requested domain");
    if (!t_ok(f0)) throw parameter_error(name + ": f0 outside the validity band");
    auto rhs = [&](double t) {
        if (!t_ok(t)) throw profile_domain_error(name + ": left validity band", t);
        return double(eps_f) * phi.eval(t).v0;
    };
    auto march = [&](double dir, double span) {
        std::vector<double> vals;
        double t = f0;
        const int nmax = int(std::floor(span / h + 1e-9));
        for (int i = 0; i < nmax; ++i) {
            const double hd = dir * h;
            try {
                const double k1 = rhs(t);
                const double k2 = rhs(t + 0.5 * hd * k1);
                const double k3 = rhs(t + 0.5 * hd * k2);
                const double k4 = rhs(t + hd * k3);
                const double tn = t + hd / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
                if (!t_ok(tn)) break;
                t = tn;
            } catch (const error&) {
                break;
            }
            vals.push_back(t);
        }
        return vals;
    };
    const std::vector<double> fwd = march(+1.0, req.hi - u0);
    const std::vector<double> bwd = march(-1.0, u0 - req.lo);
    const int m = int(bwd.size()), nf = int(fwd.size());
    if (m + nf < 4) throw parameter_error(name + ": empty valid domain");
    std::vector<double> vals(m + nf + 1), slopes(m + nf + 1);
    for (int i = 0; i < m; ++i) vals[i] = bwd[m - 1 - i];
    vals[m] = f0;
    for (int i = 0; i < nf; ++i) vals[m + 1 + i] = fwd[i];
    auto phi_p = std::make_shared<SmoothFn1>(phi);
    for (std::size_t i = 0; i < vals.size(); ++i) slopes[i] = double(eps_f) * phi_p->eval(vals[i]).v0;

    OdeResult r;
    r.dom = {u0 - h * double(m), u0 + h * double(nf)};
    r.truncated = (r.dom.lo > req.lo + 2 * h) || (r.dom.hi < req.hi - 2 * h);
    auto table = std::make_shared<HermiteTable>(r.dom.lo, h, std::move(vals), std::move(slopes));
    r.f.name = name;
    r.f.domain = r.dom;
    r.f.rule = [table, phi_p, eps_f](double u) {
        const double t = table->eval(u);
        const Jet3 p = phi_p->eval(t);
        return Jet3{t, double(eps_f) * p.v0, p.v1 * p.v0,
                    double(eps_f) * p.v0 * (p.v2 * p.v0 + p.v1 * p.v1)};
    };
    return r;
}

/// Antiderivative of sqrt(4 a^2 t^2 - b^2) appearing in the CMC solution.
double cmc_integral(double a, double b, double t) {
    const double X = 4.0 * a * a * t * t - b * b;
    if (X <= 0.0) throw parameter_error("cmc: 4 a^2 t^2 - b^2 must be positive");
    const double S = std::sqrt(X);
    return 0.5 * t * S - b * b / (4.0 * a) * std::log(std::abs(2.0 * a * t + S));
}

SmoothFn1 cmc_phi(MeridianKind kind, double a, double b, double c, int sigma) {
    SmoothFn1 phi;
    phi.name = "phi_cmc";
    phi.rule = [kind, a, b, c, sigma](double t) {
        const Jet3 T = Jet3::variable(t);
        const Jet3 X = 4.0 * a * a * T * T - b * b;
        const Jet3 S = sqrt(X);
        const Jet3 I = 0.5 * T * S - (b * b / (4.0 * a)) * logabs(2.0 * a * T + S);
        if (kind == MeridianKind::KindI) {
            const Jet3 z = (c - double(sigma) * I) / T;
            return sqrt(1.0 - z * z);
        }
        const Jet3 z = (c + double(sigma) * I) / T;
        return sqrt(1.0 + z * z);
    };
    return phi;
}

/// Band/positivity validity for a profile defined through f' = phi(f); z2(t) = g'^2.
std::function<bool(double)> band_check(std::function<double(double)> z2, bool kind_i) {
    return [z2 = std::move(z2), kind_i](double t) {
        if (!(t > f_floor)) return false;
        double q;
        try {
            q = z2(t);
        } catch (const error&) {
            return false;
        }
        if (!std::isfinite(q) || q <= detail::band_margin_clip) return false;
        if (kind_i && q >= 1.0 - detail::phi_floor) return false;
        return true;
    };
}

MeridianProfile finish_ode_profile(MeridianKind kind, OdeResult ode, int eps_f, int eps_g,
                                   double u0, double g0, std::string family) {
    MeridianProfile p;
    p.kind = kind;
    p.eps_f = eps_f;
    p.eps_g = eps_g;
    p.domain = ode.dom;
    p.truncated = ode.truncated;
    p.family = std::move(family);
    p.f = std::move(ode.f);
    p.g = g_from_f(p.f, kind, eps_g, ode.dom.clamp(u0), g0, ode.dom);
    return p;
}

}  // namespace

SmoothFn1 g_from_f(const SmoothFn1& f, MeridianKind kind, int eps_g, double u0, double g0,
                   Interval dom) {
    auto fp = std::make_shared<SmoothFn1>(f);
    SmoothFn1 gd;
    gd.name = "g'";
    gd.domain = dom;
    gd.rule = [fp, kind, eps_g](double u) {
        const Jet3 F = fp->eval(u);
        const Jet3 FD{F.v1, F.v2, F.v3, 0.0};  // order-2 jet of f'
        const Jet3 rad =
            (kind == MeridianKind::KindI) ? (1.0 - FD * FD) : (FD * FD - 1.0);
        if (rad.v0 <= 0.0)
            throw profile_domain_error("arc-length constraint violated (g' radicand <= 0)", u);
        return double(eps_g) * sqrt(rad);
    };
    return antiderivative(gd, dom, u0, g0, "g");
}

MeridianProfile flat_profile(MeridianKind kind, double a, double b, double c, Interval requested,
                             int eps_f, int eps_g) {
    double slope;
    if (kind == MeridianKind::KindI) {
        if (!(1.0 - a * a > detail::band_margin_clip))
            throw parameter_error("flat KindI requires a^2 < 1");
        slope = std::sqrt(1.0 - a * a);
    } else {
        if (!(a * a - 1.0 > detail::band_margin_clip))
            throw parameter_error("flat KindII requires a^2 > 1");
        slope = std::sqrt(a * a - 1.0);
    }
    Interval dom = requested;
    if (a != 0.0) {
        const double root = -b / a;
        if (a > 0.0)
            dom.lo = std::max(dom.lo, root + f_floor / std::abs(a));
        else
            dom.hi = std::min(dom.hi, root - f_floor / std::abs(a));
    } else if (b <= 0.0) {
        throw parameter_error("flat profile: f = b must be positive when a = 0");
    }
    if (dom.empty()) throw parameter_error("flat profile: f <= 0 on the requested domain");

    MeridianProfile p;
    p.kind = kind;
    p.eps_f = eps_f;
    p.eps_g = eps_g;
    p.domain = dom;
    p.family = "flat";
    p.f = from_expr("f", dom, [a, b](Jet3 u) { return a * u + b; });
    p.g = from_expr("g", dom, [slope, c, eps_g](Jet3 u) { return double(eps_g) * slope * u + c; });
    return p;
}

MeridianProfile constant_k_profile(MeridianKind kind, double K, double a1, double a2,
                                   Interval requested, int eps_f, int eps_g) {
    if (K == 0.0) throw parameter_error("constant_k requires K != 0 (use flat_profile)");
    const double w = std::sqrt(std::abs(K));
    std::function<Jet3(Jet3)> expr;
    if (kind == MeridianKind::KindI) {
        if (K > 0.0)
            expr = [a1, a2, w](Jet3 u) { return a1 * sin(w * u) + a2 * cos(w * u); };
        else
            expr = [a1, a2, w](Jet3 u) { return a1 * sinh(w * u) + a2 * cosh(w * u); };
    } else {
        if (K > 0.0)
            expr = [a1, a2, w](Jet3 u) { return a1 * cosh(w * u) + a2 * sinh(w * u); };
        else
            expr = [a1, a2, w](Jet3 u) { return a1 * cos(w * u) + a2 * sin(w * u); };
    }
    SmoothFn1 f = from_expr("f", {-1e300, 1e300}, expr);
    auto ok = [&f, kind](double u) {
        const Jet3 F = f.eval(u);
        if (!(F.v0 > f_floor)) return false;
        const double band =
            kind == MeridianKind::KindI ? 1.0 - F.v1 * F.v1 : F.v1 * F.v1 - 1.0;
        return band > detail::band_margin_clip;
    };
    const Interval dom =
        scan_valid(requested, 0.5 * (requested.lo + requested.hi), ok, "constant_k");
    f.domain = dom;

    MeridianProfile p;
    p.kind = kind;
    p.eps_f = eps_f;
    p.eps_g = eps_g;
    p.domain = dom;
    p.family = "constant_k";
    p.f = std::move(f);
    const double mid = 0.5 * (dom.lo + dom.hi);
    p.g = g_from_f(p.f, kind, eps_g, mid, 0.0, dom);
    return p;
}

MeridianProfile minimal_profile(MeridianKind kind, double a, double b, double c, Interval requested,
                                int eps_f, int eps_g) {
    const double disc = kind == MeridianKind::KindI ? b - a * a : a * a - b;
    if (!(disc > 0.0))
        throw parameter_error(kind == MeridianKind::KindI ? "minimal KindI requires b - a^2 > 0"
                                                          : "minimal KindII requires a^2 - b > 0");
    auto ok = [kind, a, b, disc](double u) {
        const double q = u * u + 2.0 * a * u + b;  // f^2
        if (!(q > f_floor * f_floor)) return false;
        if (kind == MeridianKind::KindII && !(u + a > 0.0)) return false;  // right branch
        return disc / q > detail::band_margin_clip;                       // band margin
    };
    const double anchor = kind == MeridianKind::KindI
                              ? -a
                              : -a + std::sqrt(disc) + 1.0;
    const Interval dom = scan_valid(requested, anchor, ok, "minimal");
    const double sd = std::sqrt(disc);

    MeridianProfile p;
    p.kind = kind;
    p.eps_f = eps_f;
    p.eps_g = eps_g;
    p.domain = dom;
    p.family = "minimal";
    p.f = from_expr("f", dom, [a, b](Jet3 u) { return sqrt(u * u + 2.0 * a * u + b); });
    p.g = from_expr("g", dom, [a, b, c, sd, eps_g](Jet3 u) {
        return double(eps_g) * sd * logabs(u + a + sqrt(u * u + 2.0 * a * u + b)) + c;
    });
    return p;
}

double cmc_shift_for(MeridianKind kind, double a, double b, double f0, double gdot0, int eps_g) {
    const double I = cmc_integral(a, b, f0);
    return kind == MeridianKind::KindI ? gdot0 * f0 + double(eps_g) * I
                                       : gdot0 * f0 - double(eps_g) * I;
}

MeridianProfile cmc_profile(MeridianKind kind, double a, double b, double c, double f0, double u0,
                            Interval requested, int eps_f, int eps_g) {
    if (a == 0.0 || b == 0.0) throw parameter_error("cmc requires a != 0 and b != 0");
    const SmoothFn1 phi = cmc_phi(kind, a, b, c, eps_g);
    auto z2 = [kind, a, b, c, eps_g](double t) {
        if (!(4.0 * a * a * t * t - b * b > detail::band_margin_clip * detail::band_margin_clip))
            throw parameter_error("cmc: radicand");
        const double z =
            (kind == MeridianKind::KindI ? c - double(eps_g) * cmc_integral(a, b, t)
                                         : c + double(eps_g) * cmc_integral(a, b, t)) /
            t;
        return z * z;
    };
    OdeResult ode = integrate_profile_ode(phi, band_check(z2, kind == MeridianKind::KindI),
                                          requested, u0, f0, eps_f, "cmc");
    return finish_ode_profile(kind, std::move(ode), eps_f, eps_g, u0, 0.0, "cmc");
}

MeridianProfile parallel_h_profile(MeridianKind kind, ParallelHCase pcase, double a, double c_or_b,
                                   double f0, double u0, Interval requested, int eps_f, int eps_g) {
    if (pcase == ParallelHCase::CaseII) {
        if (kind == MeridianKind::KindII)
            throw parameter_error(
                "parallel_h case (ii) has no second-kind realization: f = const violates "
                "f'^2 - g'^2 = 1");
        if (!(a > 0.0)) throw parameter_error("parallel_h case (ii) requires a > 0");
        MeridianProfile p;
        p.kind = kind;
        p.eps_f = eps_f;
        p.eps_g = eps_g;
        p.domain = requested;
        p.family = "parallel_h_ii";
        p.f = from_expr("f", requested, [a](Jet3) { return Jet3::constant(a); });
        const double b = c_or_b;
        p.g = from_expr("g", requested, [b, eps_g](Jet3 u) { return double(eps_g) * u + b; });
        return p;
    }
    if (a == 0.0) throw parameter_error("parallel_h case (i) requires a != 0");
    const double c = c_or_b;
    SmoothFn1 phi;
    phi.name = "phi_parallel_h";
    if (kind == MeridianKind::KindI) {
        phi.rule = [a, c](double t) {
            const Jet3 T = Jet3::variable(t);
            const Jet3 z = (c - a * T * T) / T;
            return sqrt(1.0 - z * z);
        };
    } else {
        phi.rule = [a, c](double t) {
            const Jet3 T = Jet3::variable(t);
            const Jet3 z = (c + a * T * T) / T;
            return sqrt(1.0 + z * z);
        };
    }
    auto z2 = [kind, a, c](double t) {
        const double z = (kind == MeridianKind::KindI ? c - a * t * t : c + a * t * t) / t;
        return z * z;
    };
    OdeResult ode = integrate_profile_ode(phi, band_check(z2, kind == MeridianKind::KindI),
                                          requested, u0, f0, eps_f, "parallel_h_i");
    return finish_ode_profile(kind, std::move(ode), eps_f, eps_g, u0, 0.0, "parallel_h_i");
}

MeridianProfile parallel_h0_profile(MeridianKind kind, ParallelH0Construction con, double a,
                                    double b, double c, Interval requested, int eps_f, int eps_g,
                                    double f0, double u0) {
    switch (con) {
        case ParallelH0Construction::CaseI: {
            MeridianProfile p = minimal_profile(kind, a, b, c, requested, eps_f, eps_g);
            p.family = "parallel_h0_i";
            return p;
        }
        case ParallelH0Construction::CaseIIParametric: {
            if (c == 0.0) throw parameter_error("parallel_h0 case (ii) requires c != 0");
            if (kind == MeridianKind::KindI) {
                if (a == 0.0) throw parameter_error("parallel_h0 case (ii) KindI requires a != 0");
                auto ok = [a, c, eps_f](double u) {
                    const double s = a * u - c;
                    if (!(s * s > detail::band_margin_clip)) return false;
                    if (!(1.0 - s * s > 1e-6)) return false;
                    const double fv = double(eps_f) *
                                      (s * std::sqrt(1.0 - s * s) + std::asin(s)) / (2.0 * a);
                    return fv > f_floor;
                };
                const Interval dom =
                    scan_valid(requested, 0.5 * (requested.lo + requested.hi), ok,
                               "parallel_h0_ii_parametric");
                MeridianProfile p;
                p.kind = kind;
                p.eps_f = eps_f;
                p.eps_g = eps_g;
                p.domain = dom;
                p.family = "parallel_h0_ii_parametric";
                p.f = from_expr("f", dom, [a, c, eps_f](Jet3 u) {
                    const Jet3 s = a * u - c;
                    return double(eps_f) * (s * sqrt(1.0 - s * s) + asin(s)) / (2.0 * a);
                });
                p.g = from_expr("g", dom, [a, b, c](Jet3 u) {
                    return 0.5 * a * u * u - c * u + b;
                });
                return p;
            }
            // KindII: g(t) = a ln t + c t + b on t > 0, f from the constraint.
            auto ok = [a, c](double u) {
                if (!(u > f_floor)) return false;
                const double z = a / u + c;
                return z * z > detail::band_margin_clip;
            };
            const Interval dom = scan_valid(requested, 0.5 * (requested.lo + requested.hi), ok,
                                            "parallel_h0_ii_parametric");
            MeridianProfile p;
            p.kind = kind;
            p.eps_f = eps_f;
            p.eps_g = eps_g;
            p.domain = dom;
            p.family = "parallel_h0_ii_parametric";
            SmoothFn1 fd;
            fd.name = "f'";
            fd.domain = dom;
            fd.rule = [a, c, eps_f](double u) {
                const Jet3 z = a / Jet3::variable(u) + c;
                return double(eps_f) * sqrt(1.0 + z * z);
            };
            p.f = antiderivative(fd, dom, dom.clamp(u0), f0, "f");
            if (p.f(dom.lo) <= 0.0 || p.f(dom.hi) <= 0.0)
                throw parameter_error("parallel_h0_ii_parametric: f <= 0 on domain; raise f0");
            p.g = from_expr("g", dom, [a, b, c](Jet3 u) { return a * logabs(u) + c * u + b; });
            return p;
        }
        case ParallelH0Construction::CaseIIOdeLinear:
        case ParallelH0Construction::CaseIIOdeDirect: {
            if (c == 0.0) throw parameter_error("parallel_h0 case (ii) requires c != 0");
            const bool linear_reading =
                (con == ParallelH0Construction::CaseIIOdeLinear) && kind == MeridianKind::KindI;
            SmoothFn1 phi;
            phi.name = "phi_parallel_h0";
            // z = g' as a function of t = f: the linear-ODE reading a t - c,
            // the direct-substitution solution a / t - c, or (KindII) a / t + c.
            std::function<double(double)> zval;
            if (kind == MeridianKind::KindI && linear_reading) {
                zval = [a, c](double t) { return a * t - c; };
                phi.rule = [a, c](double t) {
                    const Jet3 z = a * Jet3::variable(t) - c;
                    return sqrt(1.0 - z * z);
                };
            } else if (kind == MeridianKind::KindI) {
                zval = [a, c](double t) { return a / t - c; };
                phi.rule = [a, c](double t) {
                    const Jet3 z = a / Jet3::variable(t) - c;
                    return sqrt(1.0 - z * z);
                };
            } else {
                zval = [a, c](double t) { return a / t + c; };
                phi.rule = [a, c](double t) {
                    const Jet3 z = a / Jet3::variable(t) + c;
                    return sqrt(1.0 + z * z);
                };
            }
            auto z2 = [zval](double t) {
                const double z = zval(t);
                return z * z;
            };
            const std::string fam = linear_reading ? "parallel_h0_ii_ode_linear"
                                                 : "parallel_h0_ii_ode_direct";
            OdeResult ode = integrate_profile_ode(phi, band_check(z2, kind == MeridianKind::KindI),
                                                  requested, u0, f0, eps_f, fam);
            return finish_ode_profile(kind, std::move(ode), eps_f, eps_g, u0, b, fam);
        }
    }
    throw parameter_error("parallel_h0: unknown construction");
}

ProfileResidualReport profile_validate(const MeridianProfile& p, std::span<const double> grid) {
    ProfileResidualReport r;
    r.min_f = 1e300;
    r.min_band_margin = 1e300;
    for (double u : grid) {
        const Jet3 fj = p.f.eval(u), gj = p.g.eval(u);
        const double cons = p.kind == MeridianKind::KindI
                                ? fj.v1 * fj.v1 + gj.v1 * gj.v1 - 1.0
                                : fj.v1 * fj.v1 - gj.v1 * gj.v1 - 1.0;
        if (std::abs(cons) > r.max_constraint_residual) {
            r.max_constraint_residual = std::abs(cons);
            r.worst_u = u;
        }
        r.min_f = std::min(r.min_f, fj.v0);
        const double band = p.kind == MeridianKind::KindI ? 1.0 - fj.v1 * fj.v1
                                                          : fj.v1 * fj.v1 - 1.0;
        r.min_band_margin = std::min(r.min_band_margin, band);
    }
    return r;
}

}  // namespace meridian
