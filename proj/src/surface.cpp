#include "meridian/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "meridian/errors.hpp"

namespace meridian {
namespace {

/// Expected Gram diagonal of (X, Y, N1, N2).
std::array<double, 4> surface_signature(MeridianKind k) {
    return k == MeridianKind::KindI ? std::array<double, 4>{1.0, -1.0, 1.0, 1.0}
                                    : std::array<double, 4>{-1.0, 1.0, 1.0, 1.0};
}

/// Normal components of an ambient vector (the normal space is positive definite).
NormalPair project_normal(const Vec4& xi, const TangentNormalFrame& fr) {
    return {mink_dot(xi, fr.N1), mink_dot(xi, fr.N2)};
}

/// Jets of f', f'' and g' as functions of u, shifted down from the order-3 jets of
/// f and g; the top components are zero-padded, so derived quantities are valid
/// through first order, which is all the closed-form D-derivatives need.
struct ShiftedJets {
    Jet3 f, fd, fdd, gd;
};

ShiftedJets shifted_jets(const MeridianProfile& p, double u) {
    const Jet3 fj = p.f.eval(u), gj = p.g.eval(u);
    return {fj, Jet3{fj.v1, fj.v2, fj.v3, 0.0}, Jet3{fj.v2, fj.v3, 0.0, 0.0},
            Jet3{gj.v1, gj.v2, gj.v3, 0.0}};
}

/// H1 and H2 as order-1 jets in u at fixed v (kappa is constant in u).
std::pair<Jet3, Jet3> mean_curvature_jets_u(const MeridianProfile& p, double kappa_v, double u) {
    const ShiftedJets j = shifted_jets(p, u);
    const double sk = p.kind == MeridianKind::KindI ? -1.0 : 1.0;
    const Jet3 h1 = sk * kappa_v / (2.0 * j.f);
    const Jet3 w = j.f * j.fdd + j.fd * j.fd - 1.0;
    const Jet3 h2 = (-sk) * w / (2.0 * j.f * j.gd);
    return {h1, h2};
}

class Jacobi4 {
public:
    /// Eigen-decomposition of a symmetric 4x4 matrix by cyclic Jacobi rotations.
    /// After run(), eigenvalue(i) pairs with the column eigenvector(i).
    explicit Jacobi4(const std::array<std::array<double, 4>, 4>& m) : a_(m) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) v_[i][j] = i == j ? 1.0 : 0.0;
        run();
    }

    double eigenvalue(int i) const { return a_[i][i]; }
    std::array<double, 4> eigenvector(int i) const {
        return {v_[0][i], v_[1][i], v_[2][i], v_[3][i]};
    }

private:
    void rotate(int p, int q) {
        const double apq = a_[p][q];
        if (apq == 0.0) return;
        const double theta = (a_[q][q] - a_[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < 4; ++k) {
            const double akp = a_[k][p], akq = a_[k][q];
            a_[k][p] = c * akp - s * akq;
            a_[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
            const double apk = a_[p][k], aqk = a_[q][k];
            a_[p][k] = c * apk - s * aqk;
            a_[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 4; ++k) {
            const double vkp = v_[k][p], vkq = v_[k][q];
            v_[k][p] = c * vkp - s * vkq;
            v_[k][q] = s * vkp + c * vkq;
        }
    }

    void run() {
        for (int sweep = 0; sweep < 64; ++sweep) {
            double off = 0.0;
            for (int p = 0; p < 4; ++p)
                for (int q = p + 1; q < 4; ++q) off += a_[p][q] * a_[p][q];
            if (off < 1e-30) return;
            for (int p = 0; p < 4; ++p)
                for (int q = p + 1; q < 4; ++q) rotate(p, q);
        }
    }

    std::array<std::array<double, 4>, 4> a_, v_;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

MeridianSurface::MeridianSurface(MeridianProfile profile, SphereCurve curve)
    : profile_(std::move(profile)), curve_(std::move(curve)) {
    const bool ok = (profile_.kind == MeridianKind::KindI &&
                     curve_.kind == SphereKind::DeSitter) ||
                    (profile_.kind == MeridianKind::KindII &&
                     curve_.kind == SphereKind::Hyperbolic);
    if (!ok)
        throw parameter_error(
            "meridian kind and sphere curve are mismatched: first-kind surfaces need a de "
            "Sitter curve, second-kind surfaces a hyperbolic one");
    if (profile_.domain.empty()) throw parameter_error("profile has an empty domain");
    if (curve_.domain.empty()) throw parameter_error("sphere curve has an empty domain");
}

std::string MeridianSurface::describe() const {
    std::ostringstream os;
    os << "meridian surface, kind " << to_string(profile_.kind) << ", family "
       << (profile_.family.empty() ? "custom" : profile_.family) << ", u in ["
       << profile_.domain.lo << ", " << profile_.domain.hi << "], v in [" << curve_.domain.lo
       << ", " << curve_.domain.hi << "]";
    if (profile_.truncated) os << " (u domain truncated)";
    return os.str();
}

Vec4 MeridianSurface::position(double u, double v) const {
    const FramePoint fp = curve_.eval(v);
    return profile_.f(u) * fp.l + profile_.g(u) * Vec4::e1();
}

std::array<double, 3> MeridianSurface::first_fundamental(double u, double v) const {
    (void)v;
    const double f = profile_.f(u);
    return kind() == MeridianKind::KindI ? std::array<double, 3>{1.0, 0.0, -f * f}
                                         : std::array<double, 3>{-1.0, 0.0, f * f};
}

std::array<double, 3> MeridianSurface::first_fundamental_numeric(double u, double v,
                                                                 double h) const {
    const Vec4 zu = (position(u + h, v) - position(u - h, v)) / (2.0 * h);
    const Vec4 zv = (position(u, v + h) - position(u, v - h)) / (2.0 * h);
    return {mink_dot(zu, zu), mink_dot(zu, zv), mink_dot(zv, zv)};
}

TangentNormalFrame MeridianSurface::frame(double u, double v) const {
    const FramePoint fp = curve_.eval(v);
    const Jet3 fj = profile_.f.eval(u), gj = profile_.g.eval(u);
    TangentNormalFrame fr;
    fr.X = fj.v1 * fp.l + gj.v1 * Vec4::e1();
    fr.Y = fp.t;
    fr.N1 = fp.n;
    fr.N2 = kind() == MeridianKind::KindI ? gj.v1 * fp.l - fj.v1 * Vec4::e1()
                                          : gj.v1 * fp.l + fj.v1 * Vec4::e1();
    return fr;
}

double MeridianSurface::frame_gram_residual(double u, double v) const {
    const TangentNormalFrame fr = frame(u, v);
    const std::array<Vec4, 4> vs{fr.X, fr.Y, fr.N1, fr.N2};
    const auto sig = surface_signature(kind());
    return gram_matrix(std::span<const Vec4>(vs.data(), 4))
        .max_deviation(std::span<const double>(sig.data(), 4));
}

double MeridianSurface::gauss_closed(double u) const {
    const Jet3 fj = profile_.f.eval(u);
    const double k = fj.v2 / fj.v0;
    return kind() == MeridianKind::KindI ? -k : k;
}

double MeridianSurface::gauss_numeric_plain(double u, double v, double h) const {
    const TangentNormalFrame fr = frame(u, v);
    const double f = profile_.f(u);
    const Vec4 zc = position(u, v);
    const Vec4 zuu = (position(u + h, v) - 2.0 * zc + position(u - h, v)) / (h * h);
    const Vec4 zvv = (position(u, v + h) - 2.0 * zc + position(u, v - h)) / (h * h);
    const Vec4 zuv = (position(u + h, v + h) - position(u + h, v - h) - position(u - h, v + h) +
                      position(u - h, v - h)) /
                     (4.0 * h * h);
    const NormalPair sxx = project_normal(zuu, fr);
    const NormalPair syy{project_normal(zvv, fr).n1 / (f * f),
                         project_normal(zvv, fr).n2 / (f * f)};
    const NormalPair sxy{project_normal(zuv, fr).n1 / f, project_normal(zuv, fr).n2 / f};
    // K = (<sigma(X,X), sigma(Y,Y)> - <sigma(X,Y), sigma(X,Y)>) / (eps_X eps_Y), and the
    // tangent frame always carries one timelike and one spacelike direction.
    return -(sxx.n1 * syy.n1 + sxx.n2 * syy.n2 - sxy.n1 * sxy.n1 - sxy.n2 * sxy.n2);
}

double MeridianSurface::gauss_numeric(double u, double v, double h) const {
    const double kh = gauss_numeric_plain(u, v, h);
    const double kh2 = gauss_numeric_plain(u, v, 0.5 * h);
    return (4.0 * kh2 - kh) / 3.0;
}

double MeridianSurface::normal_curvature(double u, double v, double h) const {
    // D_Y N1 as an ambient field: the normal part of (1/f) d_v N1. N1 = n(v) does not
    // depend on u, so D_X N1 vanishes identically and only two terms of R^D survive:
    //   <R^D(X,Y) N1, N2> = <D_X (D_Y N1), N2> + (f'/f) <D_Y N1, N2>,
    // using [X, Y] = -(f'/f) Y.
    auto dyn1 = [&](double uu) {
        const TangentNormalFrame fr = frame(uu, v);
        const Vec4 dn = (curve_.eval(v + h).n - curve_.eval(v - h).n) / (2.0 * h);
        const Vec4 field = dn / profile_.f(uu);
        const NormalPair np = project_normal(field, fr);
        return np.n1 * fr.N1 + np.n2 * fr.N2;
    };
    const TangentNormalFrame fr = frame(u, v);
    const Vec4 dx_dyn1 = (dyn1(u + h) - dyn1(u - h)) / (2.0 * h);
    const Jet3 fj = profile_.f.eval(u);
    const double num =
        mink_dot(dx_dyn1, fr.N2) + (fj.v1 / fj.v0) * mink_dot(dyn1(u), fr.N2);
    return -num;  // divided by eps_X eps_Y = -1
}

NormalPair MeridianSurface::mean_curvature(double u, double v) const {
    const Jet3 fj = profile_.f.eval(u), gj = profile_.g.eval(u);
    const double kappa = curve_.kappa(v);
    const double w = fj.v0 * fj.v2 + fj.v1 * fj.v1 - 1.0;
    if (kind() == MeridianKind::KindI)
        return {-kappa / (2.0 * fj.v0), w / (2.0 * fj.v0 * gj.v1)};
    return {kappa / (2.0 * fj.v0), -w / (2.0 * fj.v0 * gj.v1)};
}

NormalPair MeridianSurface::mean_curvature_sigma(double u, double v) const {
    const Jet3 fj = profile_.f.eval(u), gj = profile_.g.eval(u);
    const double kappa = curve_.kappa(v);
    const double km = profile_.kappa_m(u);
    // Half the difference of the diagonal second-fundamental-form values, taken from
    // the frame derivative tables; the spacelike tangent direction comes first.
    if (kind() == MeridianKind::KindI)
        return {-kappa / (2.0 * fj.v0), 0.5 * (-km - gj.v1 / fj.v0)};
    return {kappa / (2.0 * fj.v0), 0.5 * (-gj.v1 / fj.v0 - km)};
}

std::pair<NormalPair, NormalPair> MeridianSurface::normal_derivative_H(double u,
                                                                       double v) const {
    const auto [h1j, h2j] = mean_curvature_jets_u(profile_, curve_.kappa(v), u);
    const double f = profile_.f(u);
    const double kprime = curve_.kappa.eval(v).v1;
    const double sk = kind() == MeridianKind::KindI ? -1.0 : 1.0;
    const NormalPair dx{h1j.v1, h2j.v1};
    const NormalPair dy{sk * kprime / (2.0 * f * f), 0.0};
    return {dx, dy};
}

std::pair<NormalPair, NormalPair> MeridianSurface::normal_derivative_H_fd(double u, double v,
                                                                          double h) const {
    auto hfield = [&](double uu, double vv) {
        const TangentNormalFrame fr = frame(uu, vv);
        const NormalPair hc = mean_curvature(uu, vv);
        return hc.n1 * fr.N1 + hc.n2 * fr.N2;
    };
    const TangentNormalFrame fr = frame(u, v);
    const Vec4 du = (hfield(u + h, v) - hfield(u - h, v)) / (2.0 * h);
    const Vec4 dv = (hfield(u, v + h) - hfield(u, v - h)) / (2.0 * h * profile_.f(u));
    return {project_normal(du, fr), project_normal(dv, fr)};
}

NormalPair MeridianSurface::normalized_H(double u, double v) const {
    const NormalPair hc = mean_curvature(u, v);
    const double n2 = hc.norm2();
    if (n2 <= tau_h) throw near_minimal_error(n2);
    const double n = std::sqrt(n2);
    return {hc.n1 / n, hc.n2 / n};
}

std::pair<NormalPair, NormalPair> MeridianSurface::normal_derivative_H0(double u,
                                                                        double v) const {
    const auto [h1j, h2j] = mean_curvature_jets_u(profile_, curve_.kappa(v), u);
    const Jet3 n2j = h1j * h1j + h2j * h2j;
    if (n2j.v0 <= tau_h) throw near_minimal_error(n2j.v0);
    const Jet3 nj = sqrt(n2j);
    const Jet3 h01 = h1j / nj, h02 = h2j / nj;
    const NormalPair dx{h01.v1, h02.v1};

    // v-direction: only H1 varies with v (through kappa); f is constant.
    const double f = profile_.f(u);
    const double sk = kind() == MeridianKind::KindI ? -1.0 : 1.0;
    const Jet3 kv = curve_.kappa.eval(v);
    const Jet3 h1v = sk * kv / (2.0 * f);
    const Jet3 h2v = Jet3::constant(h2j.v0);
    const Jet3 nv = sqrt(h1v * h1v + h2v * h2v);
    const NormalPair dy{(h1v / nv).v1 / f, (h2v / nv).v1 / f};
    return {dx, dy};
}

std::pair<NormalPair, NormalPair> MeridianSurface::normal_derivative_H0_fd(double u, double v,
                                                                           double h) const {
    auto h0field = [&](double uu, double vv) {
        const TangentNormalFrame fr = frame(uu, vv);
        const NormalPair hc = normalized_H(uu, vv);
        return hc.n1 * fr.N1 + hc.n2 * fr.N2;
    };
    const TangentNormalFrame fr = frame(u, v);
    const Vec4 du = (h0field(u + h, v) - h0field(u - h, v)) / (2.0 * h);
    const Vec4 dv = (h0field(u, v + h) - h0field(u, v - h)) / (2.0 * h * profile_.f(u));
    return {project_normal(du, fr), project_normal(dv, fr)};
}

InvariantReport MeridianSurface::report(double u, double v) const {
    InvariantReport r;
    r.u = u;
    r.v = v;
    const auto eff = first_fundamental(u, v);
    r.E = eff[0];
    r.F = eff[1];
    r.G = eff[2];
    r.kappa_m = profile_.kappa_m(u);
    r.kappa = curve_.kappa(v);
    r.K_closed = gauss_closed(u);
    r.K_numeric = gauss_numeric(u, v);
    r.Kperp = normal_curvature(u, v);
    const NormalPair hc = mean_curvature(u, v);
    r.H1 = hc.n1;
    r.H2 = hc.n2;
    r.Hnorm2 = hc.norm2();
    const auto [dhx, dhy] = normal_derivative_H(u, v);
    r.DH_X = dhx;
    r.DH_Y = dhy;
    try {
        const auto [d0x, d0y] = normal_derivative_H0(u, v);
        r.DH0_X = d0x;
        r.DH0_Y = d0y;
    } catch (const near_minimal_error&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.DH0_X = {nan, nan};
        r.DH0_Y = {nan, nan};
    }
    return r;
}

HyperplaneResult hyperplane_check(const MeridianSurface& s, std::span<const double> us,
                                  std::span<const double> vs) {
    if (us.size() < 4 || vs.size() < 4)
        throw sampling_error("hyperplane check needs at least a 4 x 4 sample grid");
    std::vector<Vec4> pts;
    pts.reserve(us.size() * vs.size());
    for (double u : us)
        for (double v : vs) pts.push_back(s.position(u, v));

    Vec4 mean;
    for (const Vec4& p : pts) mean += p;
    mean = mean / double(pts.size());

    std::array<std::array<double, 4>, 4> c{};
    Vec4 lo = pts.front(), hi = pts.front();
    for (const Vec4& p : pts) {
        const Vec4 q = p - mean;
        const std::array<double, 4> qa{q.x1, q.x2, q.x3, q.x4};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) c[i][j] += qa[i] * qa[j];
        lo = {std::min(lo.x1, p.x1), std::min(lo.x2, p.x2), std::min(lo.x3, p.x3),
              std::min(lo.x4, p.x4)};
        hi = {std::max(hi.x1, p.x1), std::max(hi.x2, p.x2), std::max(hi.x3, p.x3),
              std::max(hi.x4, p.x4)};
    }
    const double diameter = (hi - lo).euclid_norm();

    Jacobi4 eig(c);
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return eig.eigenvalue(a) < eig.eigenvalue(b); });
    const double trace = eig.eigenvalue(0) + eig.eigenvalue(1) + eig.eigenvalue(2) +
                         eig.eigenvalue(3);
    // The sample must span at least a 3-dimensional affine subspace, otherwise every
    // hyperplane through that subspace fits equally well.
    if (eig.eigenvalue(order[1]) <= 1e-12 * (1.0 + trace))
        throw sampling_error("degenerate point sample: positions span fewer than 3 dimensions");

    const auto w = eig.eigenvector(order[0]);
    HyperplaneResult res;
    res.tau = 1e-7 * diameter;
    double worst = 0.0;
    for (const Vec4& p : pts) {
        const Vec4 q = p - mean;
        worst = std::max(worst,
                         std::abs(w[0] * q.x1 + w[1] * q.x2 + w[2] * q.x3 + w[3] * q.x4));
    }
    res.max_residual = worst;
    res.contained = worst <= res.tau;
    // The fitted functional is Euclidean (w . x); the Minkowski normal of the same
    // hyperplane flips the timelike component.
    res.normal = {w[0], w[1], w[2], -w[3]};
    return res;
}

std::vector<double> grid_points(Interval iv, int n, double margin) {
    if (n < 2) throw parameter_error("grid needs at least 2 points per direction");
    const double lo = iv.lo + margin, hi = iv.hi - margin;
    if (!(lo < hi)) throw parameter_error("grid margin exceeds the interval length");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[std::size_t(i)] = lo + (hi - lo) * double(i) / double(n - 1);
    return out;
}

double default_u_margin(const MeridianSurface& s) {
    const double len = s.u_domain().length();
    return std::min(0.2 * len, std::max(2e-3, 0.01 * len));
}

double default_v_margin(const MeridianSurface& s) {
    const double len = s.v_domain().length();
    return std::min(0.2 * len, std::max(2e-3, 0.01 * len));
}

std::vector<InvariantReport> sample_grid(const MeridianSurface& s, int nu, int nv,
                                         int workers) {
    const std::vector<double> us = grid_points(s.u_domain(), nu, default_u_margin(s));
    const std::vector<double> vs = grid_points(s.v_domain(), nv, default_v_margin(s));
    std::vector<InvariantReport> rows(us.size() * vs.size());
    const int nthreads = std::max(1, std::min(workers, nu));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));

    auto work = [&](int tid) {
        try {
            for (std::size_t i = std::size_t(tid); i < us.size(); i += std::size_t(nthreads))
                for (std::size_t j = 0; j < vs.size(); ++j)
                    rows[i * vs.size() + j] = s.report(us[i], vs[j]);
        } catch (...) {
            errors[std::size_t(tid)] = std::current_exception();
        }
    };

    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

void write_csv(std::ostream& os, const std::vector<InvariantReport>& rows) {
    os << "u,v,E,F,G,kappa_m,kappa,K_closed,K_numeric,Kperp,H1,H2,Hnorm2,"
          "DHX1,DHX2,DHY1,DHY2,DH0X1,DH0X2,DH0Y1,DH0Y2\n";
    for (const InvariantReport& r : rows) {
        const double cols[] = {r.u,        r.v,        r.E,        r.F,        r.G,
                               r.kappa_m,  r.kappa,    r.K_closed, r.K_numeric, r.Kperp,
                               r.H1,       r.H2,       r.Hnorm2,   r.DH_X.n1,  r.DH_X.n2,
                               r.DH_Y.n1,  r.DH_Y.n2,  r.DH0_X.n1, r.DH0_X.n2, r.DH0_Y.n1,
                               r.DH0_Y.n2};
        for (std::size_t i = 0; i < std::size(cols); ++i) {
            if (i) os << ',';
            os << fmt17(cols[i]);
        }
        os << '\n';
    }
}

std::vector<std::string> classify(const MeridianSurface& s, int nu, int nv,
                                  const ClassifyTolerances& tol) {
    const std::vector<InvariantReport> rows = sample_grid(s, nu, nv, 1);

    double max_abs_k = 0.0, max_hnorm2 = 0.0, max_dh = 0.0, max_dh0 = 0.0, max_kperp = 0.0;
    double max_dev_k = 0.0, max_dev_h = 0.0;
    bool any_dh0 = false;
    const double k_ref = rows[rows.size() / 2].K_closed + 0.0;  // normalize -0
    const double h_ref = std::sqrt(rows[rows.size() / 2].Hnorm2);
    for (const InvariantReport& r : rows) {
        max_abs_k = std::max(max_abs_k, std::abs(r.K_closed));
        max_dev_k = std::max(max_dev_k, std::abs(r.K_closed - k_ref));
        max_hnorm2 = std::max(max_hnorm2, r.Hnorm2);
        max_dev_h = std::max(max_dev_h, std::abs(std::sqrt(r.Hnorm2) - h_ref));
        max_dh = std::max({max_dh, r.DH_X.norm(), r.DH_Y.norm()});
        max_kperp = std::max(max_kperp, std::abs(r.Kperp));
        if (std::isfinite(r.DH0_X.n1)) {
            any_dh0 = true;
            max_dh0 = std::max({max_dh0, r.DH0_X.norm(), r.DH0_Y.norm()});
        }
    }

    std::vector<std::string> labels;
    char buf[64];
    if (max_abs_k <= tol.flat) labels.emplace_back("flat");
    if (max_dev_k <= tol.constant_k) {
        std::snprintf(buf, sizeof buf, "constant_K(K=%.6g)", k_ref);
        labels.emplace_back(buf);
    }
    if (max_hnorm2 <= tol.minimal) {
        labels.emplace_back("minimal");
    } else if (max_dev_h <= tol.cmc) {
        std::snprintf(buf, sizeof buf, "CMC(a=%.6g)", h_ref);
        labels.emplace_back(buf);
    }
    if (max_dh <= tol.parallel_h) labels.emplace_back("parallel_H");
    if (any_dh0 && max_dh0 <= tol.parallel_h0) labels.emplace_back("parallel_H0");
    if (max_kperp <= tol.flat_normal) labels.emplace_back("flat_normal_connection");
    if (labels.empty()) labels.emplace_back("generic");
    return labels;
}

}  // namespace meridian
