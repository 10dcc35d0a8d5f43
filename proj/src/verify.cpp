#include "meridian/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "meridian/errors.hpp"

namespace meridian {
namespace {

std::string with_value(Property p, double value) {
    char buf[64];
    value += 0.0;  // normalize -0
    switch (p) {
        case Property::ConstantK:
            std::snprintf(buf, sizeof buf, "constant_k(K=%.6g)", value);
            return buf;
        case Property::CMC:
            std::snprintf(buf, sizeof buf, "cmc(a=%.6g)", value);
            return buf;
        default:
            return property_name(p);
    }
}

}  // namespace

const char* property_name(Property p) {
    switch (p) {
        case Property::Flat: return "flat";
        case Property::ConstantK: return "constant_k";
        case Property::Minimal: return "minimal";
        case Property::CMC: return "cmc";
        case Property::ParallelH: return "parallel_h";
        case Property::ParallelH0: return "parallel_h0";
        case Property::FlatNormalConnection: return "flat_normal_connection";
        case Property::HyperplaneContained: return "hyperplane";
    }
    return "?";
}

std::optional<Property> property_from_name(std::string name) {
    std::replace(name.begin(), name.end(), '-', '_');
    for (Property p : {Property::Flat, Property::ConstantK, Property::Minimal, Property::CMC,
                       Property::ParallelH, Property::ParallelH0,
                       Property::FlatNormalConnection, Property::HyperplaneContained})
        if (name == property_name(p)) return p;
    return std::nullopt;
}

double default_tolerance(Property p) {
    switch (p) {
        case Property::Flat:
        case Property::ConstantK:
            return 1e-8;
        case Property::Minimal:
            return 1e-8;
        case Property::CMC:
        case Property::ParallelH:
        case Property::ParallelH0:
        case Property::FlatNormalConnection:
            return 1e-6;
        case Property::HyperplaneContained:
            return 0.0;  // scale-dependent, taken from the fit itself
    }
    return 1e-6;
}

PropertySpec PropertySpec::make(Property p, double value, double tolerance) {
    PropertySpec s;
    s.property = p;
    s.value = value;
    s.tolerance = tolerance > 0.0 ? tolerance : default_tolerance(p);
    return s;
}

std::vector<Certificate> run_suite(const MeridianSurface& s,
                                   const std::vector<PropertySpec>& specs, int nu, int nv) {
    const std::vector<InvariantReport> rows = sample_grid(s, nu, nv, 1);
    std::vector<Certificate> out;
    out.reserve(specs.size());

    for (const PropertySpec& spec : specs) {
        Certificate c;
        c.surface = s.describe();
        c.property = with_value(spec.property, spec.value);
        c.grid_nu = nu;
        c.grid_nv = nv;
        c.tolerance = spec.tolerance > 0.0 ? spec.tolerance : default_tolerance(spec.property);

        if (spec.property == Property::HyperplaneContained) {
            const auto us = grid_points(s.u_domain(), nu, default_u_margin(s));
            const auto vs = grid_points(s.v_domain(), nv, default_v_margin(s));
            const HyperplaneResult hr = hyperplane_check(s, us, vs);
            c.tolerance = hr.tau;
            c.max_residual = hr.max_residual;
            c.pass = hr.contained;
            out.push_back(c);
            continue;
        }

        double worst = -1.0;
        double dh_max = 0.0;
        std::size_t defined = 0;
        for (const InvariantReport& r : rows) {
            double res = 0.0;
            bool cell_defined = true;
            switch (spec.property) {
                case Property::Flat:
                    res = std::abs(r.K_closed);
                    break;
                case Property::ConstantK:
                    res = std::abs(r.K_closed - spec.value);
                    break;
                case Property::Minimal:
                    res = std::sqrt(r.Hnorm2);
                    break;
                case Property::CMC:
                    res = std::abs(std::sqrt(r.Hnorm2) - spec.value);
                    break;
                case Property::ParallelH:
                    res = std::max(r.DH_X.norm(), r.DH_Y.norm());
                    break;
                case Property::ParallelH0:
                    cell_defined = std::isfinite(r.DH0_X.n1);
                    if (cell_defined) res = std::max(r.DH0_X.norm(), r.DH0_Y.norm());
                    dh_max = std::max({dh_max, r.DH_X.norm(), r.DH_Y.norm()});
                    break;
                case Property::FlatNormalConnection:
                    res = std::abs(r.Kperp);
                    break;
                case Property::HyperplaneContained:
                    break;  // handled above
            }
            if (cell_defined) {
                ++defined;
                if (res > worst) {
                    worst = res;
                    c.worst_u = r.u;
                    c.worst_v = r.v;
                }
            }
        }

        if (spec.property == Property::ParallelH0) {
            c.dh_witness = dh_max;
            if (defined == 0) {
                c.max_residual = std::numeric_limits<double>::infinity();
                c.pass = false;
                c.note = "normalized mean curvature undefined on the whole grid";
                out.push_back(c);
                continue;
            }
            if (defined < rows.size()) {
                std::ostringstream os;
                os << (rows.size() - defined) << " near-minimal cells skipped";
                c.note = os.str();
            }
            c.max_residual = worst;
            const bool witness = dh_max > 10.0 * c.tolerance;
            if (!witness)
                c.note += (c.note.empty() ? "" : "; ") +
                          std::string("witness failed: ||DH|| never exceeds 10x tolerance");
            c.pass = worst < c.tolerance && witness;
            out.push_back(c);
            continue;
        }

        c.max_residual = worst;
        c.pass = worst < c.tolerance;
        out.push_back(c);
    }
    return out;
}

std::string certificates_to_json(const std::vector<Certificate>& certs) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["certificates"] = nlohmann::ordered_json::array();
    for (const Certificate& c : certs) {
        nlohmann::ordered_json j;
        j["surface"] = c.surface;
        j["property"] = c.property;
        j["grid"] = {c.grid_nu, c.grid_nv};
        j["tolerance"] = c.tolerance;
        j["max_residual"] = std::isfinite(c.max_residual)
                                ? nlohmann::ordered_json(c.max_residual)
                                : nlohmann::ordered_json("inf");
        j["worst_point"] = {c.worst_u, c.worst_v};
        j["pass"] = c.pass;
        if (c.dh_witness > 0.0) j["dh_witness"] = c.dh_witness;
        if (!c.note.empty()) j["note"] = c.note;
        doc["certificates"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::vector<SweepResult> sweep(const std::vector<SweepCell>& cells,
                               const std::vector<PropertySpec>& specs, int nu, int nv) {
    std::vector<SweepResult> out;
    out.reserve(cells.size());
    for (const SweepCell& cell : cells) {
        SweepResult r;
        r.cell = cell.name;
        try {
            const MeridianSurface s = cell.make();
            r.certificates = run_suite(s, specs, nu, nv);
        } catch (const error& e) {
            r.skipped = true;
            r.skip_reason = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

void sweep_summary_csv(std::ostream& os, const std::vector<SweepResult>& results) {
    os << "cell,property,pass,max_residual,tolerance,worst_u,worst_v,note\n";
    char buf[40];
    auto num = [&buf](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    };
    for (const SweepResult& r : results) {
        if (r.skipped) {
            os << quote(r.cell) << ",skipped,,,,,," << quote(r.skip_reason) << "\n";
            continue;
        }
        for (const Certificate& c : r.certificates)
            os << quote(r.cell) << ',' << c.property << ',' << (c.pass ? "1" : "0") << ','
               << num(c.max_residual) << ',' << num(c.tolerance) << ',' << num(c.worst_u) << ','
               << num(c.worst_v) << ',' << quote(c.note) << "\n";
    }
}

}  // namespace meridian
