#pragma once

#include <istream>
#include <map>
#include <string>

#include "meridian/surface.hpp"

namespace meridian {

/// Parsed INI-style configuration: `[section]` headers over `key = value` lines,
/// `#` or `;` comments. Line numbers are kept for diagnostics.
class ConfigFile {
public:
    struct Entry {
        std::string text;
        int line = 0;
    };

    static ConfigFile parse(std::istream& in);
    static ConfigFile parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    /// Throws config_error when the key is absent.
    const Entry& get(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_number(const std::string& section, const std::string& key) const;
    double get_number(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;

    const std::map<std::string, std::map<std::string, Entry>>& sections() const {
        return sections_;
    }

    /// Inserts or overwrites a value (command-line overrides of file content).
    void set(const std::string& section, const std::string& key, const std::string& value);

private:
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

struct GridSpec {
    int nu = 41, nv = 41;
};

/// Builds the surface described by the [surface], [profile] and [curve] sections.
/// Profile families: flat, constant_k, minimal, cmc, parallel_h (case = i|ii),
/// parallel_h0 (construction = i | ii_parametric | ii_ode_linear | ii_ode_direct).
/// Curvature forms: constant (value), poly (coeffs), sin/cos/exp (amp, freq, phase).
MeridianSurface build_surface(const ConfigFile& cfg);

/// [grid] nu/nv with the 41 x 41 default.
GridSpec grid_spec(const ConfigFile& cfg);

/// Curvature function from the [curve] section (exposed for tests).
SmoothFn1 build_kappa(const ConfigFile& cfg);

}  // namespace meridian
