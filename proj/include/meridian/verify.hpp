#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "meridian/surface.hpp"

namespace meridian {

enum class Property {
    Flat,
    ConstantK,
    Minimal,
    CMC,
    ParallelH,
    ParallelH0,
    FlatNormalConnection,
    HyperplaneContained,
};

const char* property_name(Property p);
/// Parses "flat", "constant_k", "parallel-h", ... (dashes and underscores equivalent).
std::optional<Property> property_from_name(std::string name);

/// A property to certify, with its target value (ConstantK's K, CMC's a) and tolerance.
struct PropertySpec {
    Property property = Property::Flat;
    double value = 0.0;
    double tolerance = 0.0;  // 0 means use the property default

    static PropertySpec make(Property p, double value = 0.0, double tolerance = 0.0);
};

/// Closed-form residuals certify at 1e-8; finite-difference and ODE-backed ones at 1e-6.
double default_tolerance(Property p);

struct Certificate {
    std::string surface;   // descriptor (kind, family, domains)
    std::string property;  // property name, including the target value when one applies
    int grid_nu = 0, grid_nv = 0;
    double tolerance = 0.0;
    double max_residual = 0.0;
    double worst_u = 0.0, worst_v = 0.0;
    bool pass = false;
    /// ParallelH0 only: max grid value of ||DH||, which must exceed 10x the tolerance
    /// to witness a non-parallel mean curvature vector.
    double dh_witness = 0.0;
    std::string note;  // skipped cells, construction variant, degenerate data, ...
};

/// Evaluates every requested property over an nu x nv report grid (margins as in
/// sample_grid). Certificates are deterministic given (surface, grid, tolerances).
std::vector<Certificate> run_suite(const MeridianSurface& s,
                                   const std::vector<PropertySpec>& specs, int nu = 41,
                                   int nv = 41);

/// JSON document {"schema": 1, "certificates": [...]} as a string.
std::string certificates_to_json(const std::vector<Certificate>& certs);

/// One cell of a parameter sweep: a named deferred surface constructor.
struct SweepCell {
    std::string name;
    std::function<MeridianSurface()> make;
};

struct SweepResult {
    std::string cell;
    bool skipped = false;
    std::string skip_reason;
    std::vector<Certificate> certificates;
};

/// Runs the suite over every cell; constructor precondition failures become skipped
/// cells instead of aborting the sweep.
std::vector<SweepResult> sweep(const std::vector<SweepCell>& cells,
                               const std::vector<PropertySpec>& specs, int nu = 41,
                               int nv = 41);

/// CSV summary: cell,property,pass,max_residual,tolerance,worst_u,worst_v,note.
void sweep_summary_csv(std::ostream& os, const std::vector<SweepResult>& results);

}  // namespace meridian
