#include "dbx/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dbx/error.hpp"

namespace dbx {

void gauss_legendre_rule(int n, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th positive root of P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace {

struct Rule16 {
    std::vector<double> x, w;
    Rule16() { gauss_legendre_rule(16, x, w); }
};

double panel16(const std::function<double(double)>& f, double a, double b) {
    static const Rule16 rule;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        acc += rule.w[i] * f(mid + half * rule.x[i]);
    return acc * half;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double whole, double tol, int depth) {
    double mid = 0.5 * (a + b);
    double left = panel16(f, a, mid);
    double right = panel16(f, mid, b);
    if (std::fabs(left + right - whole) <= tol || depth >= 30)
        return left + right;
    return adapt(f, a, mid, left, 0.5 * tol, depth + 1) +
           adapt(f, mid, b, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_gauss_legendre(const std::function<double(double)>& f,
                               double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    return adapt(f, a, b, panel16(f, a, b), abs_tol, 0);
}

MonotoneTable arc_length_table(const CurveDef& curve, int n) {
    if (n < 16)
        fail(ErrorCode::Validation,
             "arc_length_table: need at least 16 breakpoints (got " +
                 std::to_string(n) + ")");
    if (!(curve.t1 > curve.t0))
        fail(ErrorCode::Validation, "arc_length_table: empty parameter range");

    auto speed = [&](double t) {
        Vec3 d = differentiate(curve, t, 1);
        double v = d.norm();
        if (!(v > kRegularityFloor))
            fail(ErrorCode::Regularity,
                 "arc_length_table: |dbeta/dt| = " + std::to_string(v) +
                     " at t = " + std::to_string(t) +
                     " is below the regularity floor");
        return v;
    };

    std::vector<double> ts(n), ss(n);
    double span = curve.t1 - curve.t0;
    for (int i = 0; i < n; ++i)
        ts[i] = curve.t0 + span * static_cast<double>(i) / (n - 1);
    ts[n - 1] = curve.t1;

    double coarse = std::fabs(panel16(speed, curve.t0, curve.t1));
    double tol_total = 1e-13 * std::max(1.0, coarse);
    ss[0] = 0.0;
    for (int i = 1; i < n; ++i)
        ss[i] = ss[i - 1] + adaptive_gauss_legendre(speed, ts[i - 1], ts[i],
                                                    tol_total / (n - 1));
    return MonotoneTable(std::move(ts), std::move(ss));
}

MonotoneTable theta_table(const std::function<double(double)>& kappa_of_s,
                          double s0, double s1, int n) {
    if (n < 16)
        fail(ErrorCode::Validation,
             "theta_table: need at least 16 breakpoints (got " +
                 std::to_string(n) + ")");
    if (!(s1 > s0))
        fail(ErrorCode::Validation, "theta_table: empty arc-length range");

    auto kappa = [&](double s) {
        double k = kappa_of_s(s);
        if (!(k >= kKappaMin))
            fail(ErrorCode::SingularCurvature,
                 "theta_table: kappa = " + std::to_string(k) + " at s = " +
                     std::to_string(s) + " is below the curvature cutoff, "
                     "rho = 1/kappa undefined");
        return k;
    };

    std::vector<double> ss(n), th(n);
    double span = s1 - s0;
    for (int i = 0; i < n; ++i)
        ss[i] = s0 + span * static_cast<double>(i) / (n - 1);
    ss[n - 1] = s1;

    double coarse = std::fabs(panel16(kappa, s0, s1));
    double tol_total = 1e-13 * std::max(1.0, coarse);
    th[0] = 0.0;
    for (int i = 1; i < n; ++i)
        th[i] = th[i - 1] + adaptive_gauss_legendre(kappa, ss[i - 1], ss[i],
                                                    tol_total / (n - 1));
    return MonotoneTable(std::move(ss), std::move(th));
}

} // namespace dbx
