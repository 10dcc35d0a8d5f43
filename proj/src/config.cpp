#include "meridian/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "meridian/errors.hpp"
#include "meridian/profile.hpp"
#include "meridian/sphere_curve.hpp"

namespace meridian {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const ConfigFile::Entry& e, const std::string& what) {
    const std::string t = trim(e.text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw config_error("expected a number for " + what + ", got '" + t + "'", e.line);
    return v;
}

int parse_sign(const ConfigFile& cfg, const std::string& key, int fallback) {
    if (!cfg.has("profile", key)) return fallback;
    const auto& e = cfg.get("profile", key);
    const double v = parse_double(e, "profile." + key);
    if (v != 1.0 && v != -1.0)
        throw config_error("profile." + key + " must be +1 or -1", e.line);
    return int(v);
}

Interval parse_interval(const ConfigFile& cfg, const std::string& section,
                        const std::string& lo_key, const std::string& hi_key) {
    const auto& lo = cfg.get(section, lo_key);
    const auto& hi = cfg.get(section, hi_key);
    const Interval iv{parse_double(lo, section + "." + lo_key),
                      parse_double(hi, section + "." + hi_key)};
    if (iv.empty())
        throw config_error(section + ": " + lo_key + " must be below " + hi_key, lo.line);
    return iv;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
    ConfigFile cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("unterminated section header '" + line + "'", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw config_error("empty section name", lineno);
            cfg.sections_[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("expected 'key = value', got '" + line + "'", lineno);
        if (section.empty())
            throw config_error("key outside of any [section]: '" + line + "'", lineno);
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw config_error("empty key", lineno);
        auto& sec = cfg.sections_[section];
        if (sec.count(key))
            throw config_error("duplicate key '" + section + "." + key + "'", lineno);
        sec[key] = Entry{trim(line.substr(eq + 1)), lineno};
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return parse(in);
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
    sections_[section][key] = Entry{value, 0};
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

const ConfigFile::Entry& ConfigFile::get(const std::string& section,
                                         const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) throw config_error("missing section [" + section + "]");
    const auto k = s->second.find(key);
    if (k == s->second.end())
        throw config_error("missing key '" + key + "' in section [" + section + "]");
    return k->second;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    return get(section, key).text;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return has(section, key) ? get(section, key).text : fallback;
}

double ConfigFile::get_number(const std::string& section, const std::string& key) const {
    return parse_double(get(section, key), section + "." + key);
}

double ConfigFile::get_number(const std::string& section, const std::string& key,
                              double fallback) const {
    return has(section, key) ? get_number(section, key) : fallback;
}

int ConfigFile::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    const auto& e = get(section, key);
    const double v = parse_double(e, section + "." + key);
    if (v != double(int(v)))
        throw config_error(section + "." + key + " must be an integer", e.line);
    return int(v);
}

SmoothFn1 build_kappa(const ConfigFile& cfg) {
    const auto& form_e = cfg.get("curve", "kappa");
    const std::string form = form_e.text;
    if (form == "constant") return constant_fn(cfg.get_number("curve", "value"));
    if (form == "poly") {
        const auto& ce = cfg.get("curve", "coeffs");
        std::istringstream is(ce.text);
        std::vector<double> coeffs;
        double c;
        while (is >> c) coeffs.push_back(c);
        if (coeffs.empty() || !is.eof())
            throw config_error("curve.coeffs must be a space-separated list of numbers",
                               ce.line);
        SmoothFn1 k;
        k.name = "kappa_poly";
        k.rule = [coeffs](double v) {
            Jet3 acc = Jet3::constant(0.0);
            const Jet3 x = Jet3::variable(v);
            for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
            return acc;
        };
        return k;
    }
    if (form == "sin" || form == "cos" || form == "exp") {
        const double amp = cfg.get_number("curve", "amp", 1.0);
        const double freq = cfg.get_number("curve", "freq", 1.0);
        const double phase = cfg.get_number("curve", "phase", 0.0);
        SmoothFn1 k;
        k.name = "kappa_" + form;
        k.rule = [form, amp, freq, phase](double v) {
            const Jet3 arg = freq * Jet3::variable(v) + phase;
            if (form == "sin") return amp * sin(arg);
            if (form == "cos") return amp * cos(arg);
            return amp * exp(arg);
        };
        return k;
    }
    throw config_error("unknown curvature form '" + form +
                           "' (expected constant, poly, sin, cos or exp)",
                       form_e.line);
}

MeridianSurface build_surface(const ConfigFile& cfg) {
    const auto& kind_e = cfg.get("surface", "kind");
    MeridianKind kind;
    if (kind_e.text == "I")
        kind = MeridianKind::KindI;
    else if (kind_e.text == "II")
        kind = MeridianKind::KindII;
    else
        throw config_error("surface.kind must be I or II, got '" + kind_e.text + "'",
                           kind_e.line);

    const Interval u_req = parse_interval(cfg, "profile", "umin", "umax");
    const int eps_f = parse_sign(cfg, "eps_f", +1);
    const int eps_g = parse_sign(cfg, "eps_g", +1);
    const auto& fam_e = cfg.get("profile", "family");
    const std::string family = fam_e.text;

    MeridianProfile profile;
    const double a = cfg.get_number("profile", "a", 0.0);
    const double b = cfg.get_number("profile", "b", 0.0);
    const double c = cfg.get_number("profile", "c", 0.0);
    if (family == "flat") {
        profile = flat_profile(kind, a, b, c, u_req, eps_f, eps_g);
    } else if (family == "constant_k") {
        profile = constant_k_profile(kind, cfg.get_number("profile", "K"), a, b, u_req, eps_f,
                                     eps_g);
    } else if (family == "minimal") {
        profile = minimal_profile(kind, a, b, c, u_req, eps_f, eps_g);
    } else if (family == "cmc") {
        const double f0 = cfg.get_number("profile", "f0", 1.0);
        const double u0 = cfg.get_number("profile", "u0", 0.0);
        profile = cmc_profile(kind, a, b, c, f0, u0, u_req, eps_f, eps_g);
    } else if (family == "parallel_h") {
        const auto& case_e = cfg.get("profile", "case");
        ParallelHCase pc;
        if (case_e.text == "i")
            pc = ParallelHCase::CaseI;
        else if (case_e.text == "ii")
            pc = ParallelHCase::CaseII;
        else
            throw config_error("profile.case must be i or ii", case_e.line);
        const double f0 = cfg.get_number("profile", "f0", 1.0);
        const double u0 = cfg.get_number("profile", "u0", 0.0);
        const double second = pc == ParallelHCase::CaseI ? c : b;
        profile = parallel_h_profile(kind, pc, a, second, f0, u0, u_req, eps_f, eps_g);
    } else if (family == "parallel_h0") {
        const auto& con_e = cfg.get("profile", "construction");
        ParallelH0Construction con;
        if (con_e.text == "i")
            con = ParallelH0Construction::CaseI;
        else if (con_e.text == "ii_parametric")
            con = ParallelH0Construction::CaseIIParametric;
        else if (con_e.text == "ii_ode_linear")
            con = ParallelH0Construction::CaseIIOdeLinear;
        else if (con_e.text == "ii_ode_direct")
            con = ParallelH0Construction::CaseIIOdeDirect;
        else
            throw config_error(
                "profile.construction must be i, ii_parametric, ii_ode_linear or ii_ode_direct",
                con_e.line);
        const double f0 = cfg.get_number("profile", "f0", 1.0);
        const double u0 = cfg.get_number("profile", "u0", 0.0);
        profile = parallel_h0_profile(kind, con, a, b, c, u_req, eps_f, eps_g, f0, u0);
    } else {
        throw config_error("unknown profile family '" + family + "'", fam_e.line);
    }

    const Interval v_dom = parse_interval(cfg, "curve", "vmin", "vmax");
    const SmoothFn1 kappa = build_kappa(cfg);
    const SphereKind sk =
        kind == MeridianKind::KindI ? SphereKind::DeSitter : SphereKind::Hyperbolic;
    SphereCurve curve = frenet_integrate(sk, kappa, canonical_frame(sk), v_dom, 1e-3);
    return MeridianSurface(std::move(profile), std::move(curve));
}

GridSpec grid_spec(const ConfigFile& cfg) {
    GridSpec g;
    g.nu = cfg.get_int("grid", "nu", 41);
    g.nv = cfg.get_int("grid", "nv", 41);
    if (g.nu < 2 || g.nv < 2) throw config_error("grid.nu and grid.nv must be at least 2");
    return g;
}

}  // namespace meridian
