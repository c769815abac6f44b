#pragma once

#include <functional>

#include "dbx/curve.hpp"
#include "dbx/table.hpp"

namespace dbx {

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1], computed by
// Newton iteration on the Legendre recurrence (no transcribed tables).
void gauss_legendre_rule(int n, std::vector<double>& nodes,
                         std::vector<double>& weights);

// Adaptive Gauss-Legendre integration of f over [a, b]: 16-point panels,
// bisected until the two-half refinement changes the panel by less than the
// panel's share of abs_tol.
double adaptive_gauss_legendre(const std::function<double(double)>& f,
                               double a, double b, double abs_tol);

// Cumulative arc length s(t) sampled at n uniform breakpoints of the curve
// domain, returned as an invertible table (relative accuracy ~1e-12 when the
// curve has analytic first derivatives). Enforces |dbeta/dt| > 1e-9 at every
// quadrature sample and reports the offending t on violation.
MonotoneTable arc_length_table(const CurveDef& curve, int n);

// Turning-angle parameter theta(s) = integral of kappa ds over [s0, s1],
// sampled at n uniform breakpoints, theta(s0) = 0. Enforces
// kappa >= 1e-8 at every quadrature sample (rho = 1/kappa must exist).
MonotoneTable theta_table(const std::function<double(double)>& kappa_of_s,
                          double s0, double s1, int n);

inline constexpr double kRegularityFloor = 1e-9;
inline constexpr double kKappaMin = 1e-8;

} // namespace dbx
