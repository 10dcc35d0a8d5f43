#pragma once

#include <stdexcept>
#include <string>

namespace meridian {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation outside a function's validity interval.
class interval_error : public error {
public:
    interval_error(const std::string& what_fn, double u, double lo, double hi)
        : error(what_fn + ": argument " + std::to_string(u) +
                " outside validity interval [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "]") {}
};

/// A jet primitive was applied outside its real domain (sqrt of a negative, log of a
/// non-positive, ...). Carries the primitive's name.
class primitive_domain_error : public error {
public:
    primitive_domain_error(const std::string& primitive, double arg)
        : error("jet primitive '" + primitive + "' applied outside its domain (argument " +
                std::to_string(arg) + ")") {}
};

/// Constructor parameters violate a family's preconditions.
class parameter_error : public error {
public:
    explicit parameter_error(const std::string& msg) : error(msg) {}
};

/// A profile constraint (arc-length band, positivity of f) fails on the requested domain.
class profile_domain_error : public error {
public:
    profile_domain_error(const std::string& msg, double first_offending_u)
        : error(msg + " (first offending u = " + std::to_string(first_offending_u) + ")"),
          offending_u(first_offending_u) {}
    double offending_u;
};

/// An initial Frenet frame does not satisfy the required Gram signature.
class frame_error : public error {
public:
    explicit frame_error(const std::string& msg) : error(msg) {}
};

/// Normalized mean curvature requested where <H,H> is numerically zero.
class near_minimal_error : public error {
public:
    explicit near_minimal_error(double hnorm2)
        : error("normalized mean curvature undefined: <H,H> = " + std::to_string(hnorm2) +
                " is below the near-minimal threshold") {}
};

/// Degenerate point sample (hyperplane fit, etc.).
class sampling_error : public error {
public:
    explicit sampling_error(const std::string& msg) : error(msg) {}
};

/// Malformed configuration file.
class config_error : public error {
public:
    config_error(const std::string& msg, int line)
        : error("config line " + std::to_string(line) + ": " + msg) {}
    explicit config_error(const std::string& msg) : error(msg) {}
};

}  // namespace meridian
