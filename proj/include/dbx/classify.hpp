#pragma once

#include <vector>

#include "dbx/frames.hpp"

namespace dbx {

// Scale-aware classification of a sampled surface curve. Residuals are the
// quantities compared against the tolerance, so callers can report how
// decisively a flag was set or missed:
//   geodesic   max |k_g| * L        asymptotic  max |k_n| * L
//   principal  max |t_g| * L        planar      max |tau| * L
//   helix      max |tau/kappa - mean(tau/kappa)|  vs  tol*|mean| + tol
struct CurveClass {
    bool geodesic = false;
    bool asymptotic_line = false;
    bool principal_line = false;
    bool helix = false;
    bool planar = false;

    int epsilon = 0; // sign of cos(alpha), reported when asymptotic_line

    double residual_geodesic = 0.0;
    double residual_asymptotic = 0.0;
    double residual_principal = 0.0;
    double residual_helix = 0.0;
    double residual_planar = 0.0;

    double phi_mean = 0.0; // mean tau/kappa over the samples
    double tolerance = 0.0;
    double length = 0.0;
    int samples = 0;
};

// Requires at least 8 samples spanning the full arc-length range.
CurveClass classify_curve(const std::vector<DarbouxSample>& samples,
                          double tol = 1e-6);

} // namespace dbx
