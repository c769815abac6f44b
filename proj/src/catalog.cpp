#include "dbx/catalog.hpp"

#include <cmath>
#include <string>

#include "dbx/error.hpp"

namespace dbx {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0))
        fail(ErrorCode::Validation,
             std::string(what) + " must be > 0, got " + std::to_string(v));
}

void require_range(double t0, double t1) {
    if (!(t1 > t0))
        fail(ErrorCode::Validation, "curve parameter range is empty");
}

} // namespace

SurfacePatch plane_patch() {
    SurfacePatch p;
    p.name = "plane";
    p.eval = [](double u, double v) { return Vec3{u, v, 0.0}; };
    p.du = [](double, double) { return Vec3{1.0, 0.0, 0.0}; };
    p.dv = [](double, double) { return Vec3{0.0, 1.0, 0.0}; };
    return p;
}

SurfacePatch cylinder_patch(double radius) {
    require_positive(radius, "cylinder radius");
    SurfacePatch p;
    p.name = "cylinder";
    p.eval = [radius](double u, double v) {
        return Vec3{radius * std::cos(u), radius * std::sin(u), v};
    };
    p.du = [radius](double u, double) {
        return Vec3{-radius * std::sin(u), radius * std::cos(u), 0.0};
    };
    p.dv = [](double, double) { return Vec3{0.0, 0.0, 1.0}; };
    return p;
}

SurfacePatch sphere_patch(double radius) {
    require_positive(radius, "sphere radius");
    SurfacePatch p;
    p.name = "sphere";
    p.eval = [radius](double u, double v) {
        return Vec3{radius * std::cos(v) * std::cos(u),
                    radius * std::cos(v) * std::sin(u),
                    radius * std::sin(v)};
    };
    p.du = [radius](double u, double v) {
        return Vec3{-radius * std::cos(v) * std::sin(u),
                    radius * std::cos(v) * std::cos(u), 0.0};
    };
    p.dv = [radius](double u, double v) {
        return Vec3{-radius * std::sin(v) * std::cos(u),
                    -radius * std::sin(v) * std::sin(u),
                    radius * std::cos(v)};
    };
    return p;
}

SurfacePatch ellipsoid_patch(double ax, double ay, double az) {
    require_positive(ax, "ellipsoid semi-axis ax");
    require_positive(ay, "ellipsoid semi-axis ay");
    require_positive(az, "ellipsoid semi-axis az");
    SurfacePatch p;
    p.name = "ellipsoid";
    p.eval = [ax, ay, az](double u, double v) {
        return Vec3{ax * std::cos(v) * std::cos(u),
                    ay * std::cos(v) * std::sin(u), az * std::sin(v)};
    };
    p.du = [ax, ay](double u, double v) {
        return Vec3{-ax * std::cos(v) * std::sin(u),
                    ay * std::cos(v) * std::cos(u), 0.0};
    };
    p.dv = [ax, ay, az](double u, double v) {
        return Vec3{-ax * std::sin(v) * std::cos(u),
                    -ay * std::sin(v) * std::sin(u), az * std::cos(v)};
    };
    return p;
}

CurveOnSurface helix_on_cylinder(double radius, double pitch, double t0,
                                 double t1) {
    require_positive(radius, "helix radius");
    require_range(t0, t1);
    CurveOnSurface c;
    c.surface = cylinder_patch(radius);
    c.name = "helix";
    c.u_of_t = [](double t) { return t; };
    c.v_of_t = [pitch](double t) { return pitch * t; };
    double a = radius, b = pitch;
    c.space_curve.eval = [a, b](double t) {
        return Vec3{a * std::cos(t), a * std::sin(t), b * t};
    };
    c.space_curve.d1 = [a, b](double t) {
        return Vec3{-a * std::sin(t), a * std::cos(t), b};
    };
    c.space_curve.d2 = [a](double t) {
        return Vec3{-a * std::cos(t), -a * std::sin(t), 0.0};
    };
    c.space_curve.d3 = [a](double t) {
        return Vec3{a * std::sin(t), -a * std::cos(t), 0.0};
    };
    c.space_curve.t0 = t0;
    c.space_curve.t1 = t1;
    return c;
}

CurveOnSurface circle_on_plane(double radius, double t0, double t1) {
    require_positive(radius, "circle radius");
    require_range(t0, t1);
    CurveOnSurface c;
    c.surface = plane_patch();
    c.name = "circle";
    c.u_of_t = [radius](double t) { return radius * std::cos(t); };
    c.v_of_t = [radius](double t) { return radius * std::sin(t); };
    double r = radius;
    c.space_curve.eval = [r](double t) {
        return Vec3{r * std::cos(t), r * std::sin(t), 0.0};
    };
    c.space_curve.d1 = [r](double t) {
        return Vec3{-r * std::sin(t), r * std::cos(t), 0.0};
    };
    c.space_curve.d2 = [r](double t) {
        return Vec3{-r * std::cos(t), -r * std::sin(t), 0.0};
    };
    c.space_curve.d3 = [r](double t) {
        return Vec3{r * std::sin(t), -r * std::cos(t), 0.0};
    };
    c.space_curve.t0 = t0;
    c.space_curve.t1 = t1;
    return c;
}

CurveOnSurface great_circle(double radius, double t0, double t1) {
    require_positive(radius, "sphere radius");
    require_range(t0, t1);
    CurveOnSurface c = circle_on_plane(radius, t0, t1);
    c.surface = sphere_patch(radius);
    c.name = "great_circle";
    c.u_of_t = [](double t) { return t; };
    c.v_of_t = [](double) { return 0.0; };
    return c;
}

CurveOnSurface wave_on_ellipsoid(double ax, double ay, double az, double v0,
                                 double amp, int freq, double t0, double t1) {
    require_range(t0, t1);
    if (!(std::fabs(v0) + std::fabs(amp) < 1.4))
        fail(ErrorCode::Validation,
             "wave curve needs |v0| + |amp| < 1.4 to stay away from the "
             "ellipsoid poles");
    if (freq == 0)
        fail(ErrorCode::Validation, "wave frequency must be nonzero");

    CurveOnSurface c;
    c.surface = ellipsoid_patch(ax, ay, az);
    c.name = "wave";
    double w = freq;
    c.u_of_t = [](double t) { return t; };
    c.v_of_t = [v0, amp, w](double t) { return v0 + amp * std::sin(w * t); };

    // beta(t) = S(t, v(t)) differentiated with the chain rule; the patch
    // partials of the trig parametrization are closed-form.
    auto Su = [ax, ay](double u, double v) {
        return Vec3{-ax * std::cos(v) * std::sin(u),
                    ay * std::cos(v) * std::cos(u), 0.0};
    };
    auto Sv = [ax, ay, az](double u, double v) {
        return Vec3{-ax * std::sin(v) * std::cos(u),
                    -ay * std::sin(v) * std::sin(u), az * std::cos(v)};
    };
    auto Suu = [ax, ay](double u, double v) {
        return Vec3{-ax * std::cos(v) * std::cos(u),
                    -ay * std::cos(v) * std::sin(u), 0.0};
    };
    auto Suv = [ax, ay](double u, double v) {
        return Vec3{ax * std::sin(v) * std::sin(u),
                    -ay * std::sin(v) * std::cos(u), 0.0};
    };
    auto Svv = [ax, ay, az](double u, double v) {
        return Vec3{-ax * std::cos(v) * std::cos(u),
                    -ay * std::cos(v) * std::sin(u), -az * std::sin(v)};
    };
    auto Suuu = [ax, ay](double u, double v) {
        return Vec3{ax * std::cos(v) * std::sin(u),
                    -ay * std::cos(v) * std::cos(u), 0.0};
    };
    auto Suuv = [ax, ay](double u, double v) {
        return Vec3{ax * std::sin(v) * std::cos(u),
                    ay * std::sin(v) * std::sin(u), 0.0};
    };
    auto Suvv = [ax, ay](double u, double v) {
        return Vec3{ax * std::cos(v) * std::sin(u),
                    -ay * std::cos(v) * std::cos(u), 0.0};
    };
    auto Svvv = [ax, ay, az](double u, double v) {
        return Vec3{ax * std::sin(v) * std::cos(u),
                    ay * std::sin(v) * std::sin(u), -az * std::cos(v)};
    };

    auto vpath = [v0, amp, w](double t) { return v0 + amp * std::sin(w * t); };
    auto vd1 = [amp, w](double t) { return amp * w * std::cos(w * t); };
    auto vd2 = [amp, w](double t) { return -amp * w * w * std::sin(w * t); };
    auto vd3 = [amp, w](double t) {
        return -amp * w * w * w * std::cos(w * t);
    };

    c.space_curve.eval = [eval = c.surface.eval, vpath](double t) {
        return eval(t, vpath(t));
    };
    c.space_curve.d1 = [Su, Sv, vpath, vd1](double t) {
        double v = vpath(t);
        return Su(t, v) + Sv(t, v) * vd1(t);
    };
    c.space_curve.d2 = [Sv, Suu, Suv, Svv, vpath, vd1, vd2](double t) {
        double v = vpath(t), p1 = vd1(t);
        return Suu(t, v) + Suv(t, v) * (2.0 * p1) + Svv(t, v) * (p1 * p1) +
               Sv(t, v) * vd2(t);
    };
    c.space_curve.d3 = [Sv, Suv, Svv, Suuu, Suuv, Suvv, Svvv, vpath, vd1,
                        vd2, vd3](double t) {
        double v = vpath(t), p1 = vd1(t), p2 = vd2(t);
        return Suuu(t, v) + Suuv(t, v) * (3.0 * p1) +
               Suvv(t, v) * (3.0 * p1 * p1) + Svvv(t, v) * (p1 * p1 * p1) +
               (Suv(t, v) + Svv(t, v) * p1) * (3.0 * p2) + Sv(t, v) * vd3(t);
    };
    c.space_curve.t0 = t0;
    c.space_curve.t1 = t1;
    return c;
}

} // namespace dbx
