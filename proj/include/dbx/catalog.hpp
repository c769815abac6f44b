#pragma once

#include "dbx/surface.hpp"

namespace dbx {

// Built-in surfaces. Normals follow the patch orientation:
// plane -> +z, cylinder/sphere/ellipsoid -> outward.
SurfacePatch plane_patch();
SurfacePatch cylinder_patch(double radius);
SurfacePatch sphere_patch(double radius);
SurfacePatch ellipsoid_patch(double ax, double ay, double az);

// Built-in curves, with analytic derivatives through third order.
// helix_on_cylinder: (a cos t, a sin t, b t) on the radius-a cylinder.
CurveOnSurface helix_on_cylinder(double radius, double pitch, double t0,
                                 double t1);
// circle_on_plane: radius-r circle about the origin in the z = 0 plane.
CurveOnSurface circle_on_plane(double radius, double t0, double t1);
// great_circle: the equator of the radius-r sphere.
CurveOnSurface great_circle(double radius, double t0, double t1);
// wave_on_ellipsoid: u = t, v = v0 + amp sin(freq t); a generic curve that
// carries none of the special-curve properties. Requires |v0| + |amp| < 1.4
// so the parametrization stays clear of the poles.
CurveOnSurface wave_on_ellipsoid(double ax, double ay, double az, double v0,
                                 double amp, int freq, double t0, double t1);

} // namespace dbx
