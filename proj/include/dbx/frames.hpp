#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dbx/curve.hpp"
#include "dbx/surface.hpp"
#include "dbx/table.hpp"
#include "dbx/vec3.hpp"

namespace dbx {

// Frenet data at a point: unit tangent, principal normal, binormal, plus
// curvature and torsion. Only defined where kappa exceeds the cutoff.
struct FrenetApparatus {
    Vec3 T, N, B;
    double kappa = 0.0;
    double tau = 0.0;
};

// One sample of the surface-adapted frame {T, g, n} with g = n x T.
// alpha is the angle from the binormal to the surface normal, unwrapped to a
// continuous branch along a sampled curve; it ties the two frames together:
//   k_g = kappa cos(alpha), k_n = kappa sin(alpha), t_g = tau - dalpha/ds.
struct DarbouxSample {
    double s = 0.0;     // arc length from the range start
    double theta = 0.0; // turning angle, dtheta/ds = kappa
    Vec3 p;             // position
    Vec3 T, g, n;
    double k_g = 0.0; // geodesic curvature    <T', g>
    double k_n = 0.0; // normal curvature      <T', n>
    double t_g = 0.0; // geodesic torsion      <g', n>
    double alpha = 0.0;
    double kappa = 0.0;
    double tau = 0.0;
};

// A sampled frame field along one curve: uniform s-grid samples plus the
// turning-angle table used to convert between s and theta.
struct FrameField {
    std::vector<DarbouxSample> samples;
    MonotoneTable theta_of_s;
    double length = 0.0;
    std::string normal_convention; // "outward", "+z", "abstract", "patch"
    std::string name;
};

// Frenet frame at parameter t (workhorse) and at arc length s (via an
// arc-length table from arc_length_table()).
FrenetApparatus frenet_at_t(const CurveDef& curve, double t);
FrenetApparatus frenet_apparatus(const CurveDef& curve, double s,
                                 const MonotoneTable& arc_table);

// Darboux frame of a surface curve at parameter t / arc length s.
// k_g, k_n come from projecting dT/ds; t_g from differencing the g field.
// theta is filled by the sampling drivers, not here.
DarbouxSample darboux_at_t(const CurveOnSurface& curve, double t);
DarbouxSample darboux_frame(const CurveOnSurface& curve, double s,
                            const MonotoneTable& arc_table);

// Samples the Darboux frame at n uniform arc-length stations over the curve's
// parameter range and attaches the turning-angle table. alpha is unwrapped.
FrameField sample_darboux(const CurveOnSurface& curve, int n,
                          std::string normal_convention = "patch");

// How alpha evolves along an abstract frame integration.
struct AlphaRule {
    enum class Kind {
        Constant,   // alpha(s) = alpha0, so t_g = tau
        TauIntegral // dalpha/ds = tau,   so t_g = 0 (principal-line data)
    };
    Kind kind = Kind::Constant;
    double alpha0 = 0.0;
};

// Builds a frame field directly from curvature data: integrates
//   dp/ds = T,  dT/ds = k_g g + k_n n,  dg/ds = -k_g T + t_g n,
//   dn/ds = -k_n T - t_g g,  dtheta/ds = kappa(theta)
// with k_g = kappa cos(alpha), k_n = kappa sin(alpha) and alpha per rule.
// The frame triple is projected back onto the nearest orthonormal triple
// after every step; drift beyond 1e-6 before projection is an error.
FrameField darboux_from_abstract(const std::function<double(double)>& kappa_of_theta,
                                 const std::function<double(double)>& tau_of_theta,
                                 const AlphaRule& rule, double s0, double s1,
                                 int n);

inline constexpr double kFrameDriftBudget = 1e-6;

} // namespace dbx
