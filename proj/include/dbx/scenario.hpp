#pragma once

#include <optional>
#include <string>

namespace dbx {

/// One run description, parsed from a flat "key = value" text file. Keys use
/// dotted sections (surface.kind, case.form, ...); '#' starts a comment.
/// Exactly one of the two geometry routes must be present:
///   surface.* + curve.*   catalog surface with a catalog curve on it
///   abstract.*            curvature/torsion data integrated into a frame
struct Scenario {
    std::string name;
    int samples = 256;
    std::optional<double> tolerance; // classification/frame tolerance

    // surface + curve route
    bool has_surface = false;
    std::string surface_kind; // plane | cylinder | sphere | ellipsoid
    double surface_radius = 1.0;
    double surface_ax = 1.0, surface_ay = 1.0, surface_az = 1.0;

    std::string curve_kind; // helix | circle | great_circle | wave
    double curve_a = 1.0;   // helix radius
    double curve_b = 1.0;   // helix pitch
    double curve_radius = 1.0;
    double curve_v0 = 0.3, curve_amp = 0.25; // wave latitude band
    int curve_freq = 2;
    double curve_t0 = 0.0;
    double curve_t1 = 6.283185307179586476925286766559;

    // abstract route (constant curvature/torsion)
    bool has_abstract = false;
    double abstract_kappa = 1.0;
    double abstract_tau = 0.0;
    std::string abstract_alpha_rule = "constant"; // constant | tau_integral
    double abstract_alpha0 = 0.0;
    double abstract_s0 = 0.0;
    double abstract_s1 = 6.283185307179586476925286766559;

    // coefficient construction (breadth/verify commands)
    std::string case_form; // geodesic_i | geodesic_ii | asymptotic_i |
                           // asymptotic_ii | principal_helix |
                           // principal_constant | integrate
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    std::optional<int> case_epsilon;
    double m1_0 = 0.0, m2_0 = 0.0, m3_0 = 0.0;
    // present iff case.m2_0/case.m3_0 were given; principal_helix falls back
    // to row-consistent initials when absent
    std::optional<double> case_m2_0, case_m3_0;
    double m1_const = 0.0; // additive constant solution term
    int steps = 4096;      // integrator steps over the theta range
    std::string corrupt = "none"; // none | m1f | m2_half_scale |
                                  // m3_scale | frame_g
    std::string output_basename;  // defaults to name
};

/// Parses and validates; throws Error(Validation) naming the offending field.
Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin);
Scenario parse_scenario_file(const std::string& path);

} // namespace dbx
