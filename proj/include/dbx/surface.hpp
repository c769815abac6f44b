#pragma once

#include <functional>
#include <string>

#include "dbx/curve.hpp"
#include "dbx/vec3.hpp"

namespace dbx {

// Regular parametric patch (u, v) -> R^3. Analytic partials are optional;
// finite differences (step 1e-5) fill in when absent. The unit normal is
// normalize(S_u x S_v), so the parametrization order fixes its orientation.
struct SurfacePatch {
    std::function<Vec3(double, double)> eval;
    std::function<Vec3(double, double)> du; // may be empty
    std::function<Vec3(double, double)> dv;
    std::string name = "patch";

    Vec3 partial_u(double u, double v) const;
    Vec3 partial_v(double u, double v) const;

    // Throws ErrorCode::Regularity when |S_u x S_v| <= 1e-9.
    Vec3 normal(double u, double v) const;
};

// Curve embedded in a surface: a (u(t), v(t)) path plus the composed space
// curve. The composed curve may carry analytic derivatives (catalog fixtures
// do); otherwise its derivatives come from finite differences.
struct CurveOnSurface {
    SurfacePatch surface;
    std::function<double(double)> u_of_t;
    std::function<double(double)> v_of_t;
    CurveDef space_curve;
    std::string name = "curve";

    Vec3 surface_normal_at(double t) const {
        return surface.normal(u_of_t(t), v_of_t(t));
    }
};

// Composes surface and path into a CurveOnSurface whose space curve is
// evaluated through the patch (finite-difference derivatives).
CurveOnSurface make_curve_on_surface(SurfacePatch surface,
                                     std::function<double(double)> u_of_t,
                                     std::function<double(double)> v_of_t,
                                     double t0, double t1,
                                     std::string name = "curve");

} // namespace dbx
