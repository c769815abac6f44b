#pragma once

#include <functional>

#include "dbx/vec3.hpp"

namespace dbx {

// Parametric space curve t -> R^3 over [t0, t1]. Analytic derivative
// evaluators (orders 1..3) are optional; when present they are preferred over
// finite differences everywhere in the library.
struct CurveDef {
    std::function<Vec3(double)> eval;
    std::function<Vec3(double)> d1; // may be empty
    std::function<Vec3(double)> d2;
    std::function<Vec3(double)> d3;
    double t0 = 0.0;
    double t1 = 1.0;

    bool has_analytic(int order) const {
        if (order == 1) return static_cast<bool>(d1);
        if (order == 2) return static_cast<bool>(d2);
        if (order == 3) return static_cast<bool>(d3);
        return false;
    }
};

// d^order beta / dt^order, order in {1,2,3}. Uses the analytic evaluator when
// supplied, otherwise a central difference with step h = max(1e-5, 1e-5*|t|).
// Finite differencing requires t to sit at least 2h inside [t0, t1].
Vec3 differentiate(const CurveDef& curve, double t, int order);

// Central differences with caller-chosen step, used internally where the
// pinned step of differentiate() would be cancellation-dominated (orders 2-3
// on curves lacking analytic derivatives). Same stencils, same margin rule.
Vec3 central_difference(const std::function<Vec3(double)>& f, double t,
                        int order, double h);

} // namespace dbx
