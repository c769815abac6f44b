#include "dbx/curve.hpp"

#include <cmath>
#include <string>

#include "dbx/error.hpp"

namespace dbx {

Vec3 central_difference(const std::function<Vec3(double)>& f, double t,
                        int order, double h) {
    switch (order) {
    case 1:
        return (f(t + h) - f(t - h)) / (2.0 * h);
    case 2:
        return (f(t + h) - f(t) * 2.0 + f(t - h)) / (h * h);
    case 3:
        return (f(t + 2.0 * h) - f(t + h) * 2.0 + f(t - h) * 2.0 -
                f(t - 2.0 * h)) /
               (2.0 * h * h * h);
    default:
        fail(ErrorCode::Validation,
             "differentiate: order must be 1, 2 or 3 (got " +
                 std::to_string(order) + ")");
    }
}

Vec3 differentiate(const CurveDef& curve, double t, int order) {
    if (order < 1 || order > 3)
        fail(ErrorCode::Validation,
             "differentiate: order must be 1, 2 or 3 (got " +
                 std::to_string(order) + ")");
    if (!curve.eval)
        fail(ErrorCode::Validation, "differentiate: curve has no evaluator");
    if (t < curve.t0 || t > curve.t1)
        fail(ErrorCode::Domain, "differentiate: t = " + std::to_string(t) +
                                    " outside [" + std::to_string(curve.t0) +
                                    ", " + std::to_string(curve.t1) + "]");

    if (order == 1 && curve.d1) return curve.d1(t);
    if (order == 2 && curve.d2) return curve.d2(t);
    if (order == 3 && curve.d3) return curve.d3(t);

    double h = std::max(1e-5, 1e-5 * std::fabs(t));
    if (t - 2.0 * h < curve.t0 || t + 2.0 * h > curve.t1)
        fail(ErrorCode::Domain,
             "differentiate: t = " + std::to_string(t) +
                 " closer than 2h to the domain boundary (h = " +
                 std::to_string(h) + ")");
    return central_difference(curve.eval, t, order, h);
}

} // namespace dbx
