// Command-line front end: sample invariant grids to CSV, run verification suites
// and classify surfaces described by INI-style config files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meridian/config.hpp"
#include "meridian/errors.hpp"
#include "meridian/surface.hpp"
#include "meridian/verify.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string grid;  // "NxM"
    std::optional<double> umin, umax, vmin, vmax;
    std::string out;
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "surface config file")->required();
    cmd->add_option("--grid", o.grid, "sample grid as NxM (default from config, else 41x41)");
    cmd->add_option("--umin", o.umin, "override profile umin");
    cmd->add_option("--umax", o.umax, "override profile umax");
    cmd->add_option("--vmin", o.vmin, "override curve vmin");
    cmd->add_option("--vmax", o.vmax, "override curve vmax");
    cmd->add_option("--out", o.out, "output path (default standard output)");
    cmd->add_option("--workers", o.workers, "grid evaluation worker threads")
        ->check(CLI::Range(1, 64));
}

std::string num_to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

meridian::ConfigFile load_config(const CommonOpts& o) {
    meridian::ConfigFile cfg = meridian::ConfigFile::parse_file(o.config_path);
    if (o.umin) cfg.set("profile", "umin", num_to_string(*o.umin));
    if (o.umax) cfg.set("profile", "umax", num_to_string(*o.umax));
    if (o.vmin) cfg.set("curve", "vmin", num_to_string(*o.vmin));
    if (o.vmax) cfg.set("curve", "vmax", num_to_string(*o.vmax));
    return cfg;
}

meridian::GridSpec resolve_grid(const meridian::ConfigFile& cfg, const std::string& flag) {
    meridian::GridSpec g = meridian::grid_spec(cfg);
    if (!flag.empty()) {
        int nu = 0, nv = 0;
        char x = 0;
        std::istringstream is(flag);
        if (!(is >> nu >> x >> nv) || x != 'x' || !is.eof() || nu < 2 || nv < 2)
            throw meridian::config_error("--grid expects NxM with N, M >= 2, got '" + flag +
                                         "'");
        g.nu = nu;
        g.nv = nv;
    }
    return g;
}

/// Writes to the path or standard output; byte-identical across runs.
void emit(const std::string& out, const std::string& payload) {
    if (out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw meridian::config_error("cannot open output file '" + out + "'");
    os << payload;
}

double reference_value(const meridian::MeridianSurface& s, const meridian::ConfigFile& cfg,
                       meridian::Property p) {
    // Target values: prefer the config's own parameters, fall back to the invariant
    // evaluated at the domain midpoint.
    const double umid = 0.5 * (s.u_domain().lo + s.u_domain().hi);
    const double vmid = 0.5 * (s.v_domain().lo + s.v_domain().hi);
    if (p == meridian::Property::ConstantK) {
        if (cfg.has("profile", "K")) return cfg.get_number("profile", "K");
        return s.gauss_closed(umid);
    }
    if (p == meridian::Property::CMC) {
        const std::string family = cfg.get_string("profile", "family", "");
        if (family == "cmc" && cfg.has("profile", "a")) return cfg.get_number("profile", "a");
        return std::sqrt(s.hnorm2(umid, vmid));
    }
    return 0.0;
}

int run(int argc, char** argv) {
    CLI::App app{"timelike meridian surfaces: sampling, verification, classification"};
    app.require_subcommand(1);

    CommonOpts sample_o, verify_o, classify_o;
    std::vector<std::string> properties;
    std::vector<std::string> tol_flags;
    bool all_properties = false;

    CLI::App* sample = app.add_subcommand("sample", "write the invariant grid as CSV");
    add_common(sample, sample_o);

    CLI::App* verify = app.add_subcommand("verify", "emit JSON certificates; exit 1 on failure");
    add_common(verify, verify_o);
    verify->add_option("--property", properties,
                       "property to certify (repeatable): flat, constant-k, minimal, cmc, "
                       "parallel-h, parallel-h0, flat-normal-connection, hyperplane");
    verify->add_flag("--all", all_properties, "certify every property");
    verify->add_option("--tol", tol_flags, "tolerance override NAME=VALUE (repeatable)");

    CLI::App* classify = app.add_subcommand("classify", "print the label set");
    add_common(classify, classify_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors are exit 2; --help stays 0
    }

    if (sample->parsed()) {
        const meridian::ConfigFile cfg = load_config(sample_o);
        const meridian::MeridianSurface s = meridian::build_surface(cfg);
        const meridian::GridSpec g = resolve_grid(cfg, sample_o.grid);
        const auto rows = meridian::sample_grid(s, g.nu, g.nv, sample_o.workers);
        std::ostringstream os;
        meridian::write_csv(os, rows);
        emit(sample_o.out, os.str());
        return 0;
    }

    if (verify->parsed()) {
        const meridian::ConfigFile cfg = load_config(verify_o);
        const meridian::MeridianSurface s = meridian::build_surface(cfg);
        const meridian::GridSpec g = resolve_grid(cfg, verify_o.grid);

        std::map<meridian::Property, double> tol_override;
        for (const std::string& t : tol_flags) {
            const std::size_t eq = t.find('=');
            if (eq == std::string::npos)
                throw meridian::config_error("--tol expects NAME=VALUE, got '" + t + "'");
            const auto p = meridian::property_from_name(t.substr(0, eq));
            if (!p)
                throw meridian::config_error("--tol names unknown property '" +
                                             t.substr(0, eq) + "'");
            tol_override[*p] = std::stod(t.substr(eq + 1));
        }

        std::vector<meridian::Property> wanted;
        if (all_properties) {
            wanted = {meridian::Property::Flat,
                      meridian::Property::ConstantK,
                      meridian::Property::Minimal,
                      meridian::Property::CMC,
                      meridian::Property::ParallelH,
                      meridian::Property::ParallelH0,
                      meridian::Property::FlatNormalConnection,
                      meridian::Property::HyperplaneContained};
        } else {
            for (const std::string& name : properties) {
                const auto p = meridian::property_from_name(name);
                if (!p) throw meridian::config_error("unknown property '" + name + "'");
                wanted.push_back(*p);
            }
        }
        if (wanted.empty())
            throw meridian::config_error("verify needs --property NAME or --all");

        std::vector<meridian::PropertySpec> specs;
        for (meridian::Property p : wanted) {
            const double tol = tol_override.count(p) ? tol_override[p] : 0.0;
            specs.push_back(
                meridian::PropertySpec::make(p, reference_value(s, cfg, p), tol));
        }
        const auto certs = meridian::run_suite(s, specs, g.nu, g.nv);
        emit(verify_o.out, meridian::certificates_to_json(certs));
        for (const auto& c : certs)
            if (!c.pass) return 1;
        return 0;
    }

    // classify
    const meridian::ConfigFile cfg = load_config(classify_o);
    const meridian::MeridianSurface s = meridian::build_surface(cfg);
    const meridian::GridSpec g = resolve_grid(cfg, classify_o.grid);
    const auto labels = meridian::classify(s, g.nu, g.nv);
    std::string line;
    for (const auto& l : labels) {
        if (!line.empty()) line += ", ";
        line += l;
    }
    emit(classify_o.out, line + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const meridian::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
