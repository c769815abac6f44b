#include "dbx/surface.hpp"

#include <string>
#include <utility>

#include "dbx/error.hpp"
#include "dbx/quadrature.hpp"

namespace dbx {

namespace {
constexpr double kPatchStep = 1e-5;
}

Vec3 SurfacePatch::partial_u(double u, double v) const {
    if (du) return du(u, v);
    return (eval(u + kPatchStep, v) - eval(u - kPatchStep, v)) /
           (2.0 * kPatchStep);
}

Vec3 SurfacePatch::partial_v(double u, double v) const {
    if (dv) return dv(u, v);
    return (eval(u, v + kPatchStep) - eval(u, v - kPatchStep)) /
           (2.0 * kPatchStep);
}

Vec3 SurfacePatch::normal(double u, double v) const {
    if (!eval)
        fail(ErrorCode::Validation, "SurfacePatch: missing evaluator");
    Vec3 c = partial_u(u, v).cross(partial_v(u, v));
    double len = c.norm();
    if (!(len > kRegularityFloor))
        fail(ErrorCode::Regularity,
             "SurfacePatch '" + name + "': |S_u x S_v| = " +
                 std::to_string(len) + " at (u, v) = (" + std::to_string(u) +
                 ", " + std::to_string(v) + ") is below the regularity floor");
    return c / len;
}

CurveOnSurface make_curve_on_surface(SurfacePatch surface,
                                     std::function<double(double)> u_of_t,
                                     std::function<double(double)> v_of_t,
                                     double t0, double t1, std::string name) {
    CurveOnSurface out;
    out.surface = std::move(surface);
    out.u_of_t = std::move(u_of_t);
    out.v_of_t = std::move(v_of_t);
    out.name = std::move(name);
    auto se = out.surface.eval;
    auto u = out.u_of_t;
    auto v = out.v_of_t;
    out.space_curve.eval = [se, u, v](double t) { return se(u(t), v(t)); };
    out.space_curve.t0 = t0;
    out.space_curve.t1 = t1;
    return out;
}

} // namespace dbx
