#include "dbx/frames.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dbx/error.hpp"
#include "dbx/ode.hpp"
#include "dbx/quadrature.hpp"

namespace dbx {

namespace {

// Derivatives for internal frame work. Public differentiate() keeps its
// pinned step; here curves without analytic derivatives get order-calibrated
// steps so that second/third differences are not cancellation-dominated.
Vec3 curve_deriv(const CurveDef& c, double t, int order) {
    if (c.has_analytic(order)) {
        if (order == 1) return c.d1(t);
        if (order == 2) return c.d2(t);
        return c.d3(t);
    }
    double scale = std::max(1.0, std::fabs(t));
    double h = (order == 1) ? 1e-5 * scale
               : (order == 2) ? 1.2e-4 * scale
                              : 7e-4 * scale;
    return central_difference(c.eval, t, order, h);
}

double speed_checked(const Vec3& v1, double t, const char* who) {
    double speed = v1.norm();
    if (!(speed > kRegularityFloor))
        fail(ErrorCode::Regularity,
             std::string(who) + ": |dbeta/dt| = " + std::to_string(speed) +
                 " at t = " + std::to_string(t) +
                 " is below the regularity floor");
    return speed;
}

// Unit g = n x T rebuilt from scratch; used to difference the g field.
Vec3 g_field(const CurveOnSurface& c, double t) {
    Vec3 v1 = curve_deriv(c.space_curve, t, 1);
    Vec3 T = v1 / speed_checked(v1, t, "darboux frame");
    return c.surface_normal_at(t).cross(T).normalized();
}

double kappa_at_t(const CurveDef& curve, double t) {
    Vec3 v1 = curve_deriv(curve, t, 1);
    double speed = speed_checked(v1, t, "curvature");
    Vec3 cr = v1.cross(curve_deriv(curve, t, 2));
    return cr.norm() / (speed * speed * speed);
}

void unwrap_alpha(std::vector<DarbouxSample>& samples) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double a = samples[i].alpha;
        while (a - samples[i - 1].alpha > std::numbers::pi) a -= two_pi;
        while (a - samples[i - 1].alpha < -std::numbers::pi) a += two_pi;
        samples[i].alpha = a;
    }
}

// One Newton step of the polar decomposition: Q <- Q (3I - Q^T Q)/2 applied
// to the columns (T, g, n). Two steps take a 1e-6 perturbation to roundoff.
void polar_project(Vec3& T, Vec3& g, Vec3& n) {
    for (int iter = 0; iter < 2; ++iter) {
        double s11 = T.dot(T), s12 = T.dot(g), s13 = T.dot(n);
        double s22 = g.dot(g), s23 = g.dot(n), s33 = n.dot(n);
        double a11 = 1.5 - 0.5 * s11, a22 = 1.5 - 0.5 * s22,
               a33 = 1.5 - 0.5 * s33;
        double a12 = -0.5 * s12, a13 = -0.5 * s13, a23 = -0.5 * s23;
        Vec3 Tn = T * a11 + g * a12 + n * a13;
        Vec3 gn = T * a12 + g * a22 + n * a23;
        Vec3 nn = T * a13 + g * a23 + n * a33;
        T = Tn;
        g = gn;
        n = nn;
    }
}

double gram_drift(const Vec3& T, const Vec3& g, const Vec3& n) {
    double worst = 0.0;
    worst = std::max(worst, std::fabs(T.dot(T) - 1.0));
    worst = std::max(worst, std::fabs(g.dot(g) - 1.0));
    worst = std::max(worst, std::fabs(n.dot(n) - 1.0));
    worst = std::max(worst, std::fabs(T.dot(g)));
    worst = std::max(worst, std::fabs(T.dot(n)));
    worst = std::max(worst, std::fabs(g.dot(n)));
    return worst;
}

} // namespace

FrenetApparatus frenet_at_t(const CurveDef& curve, double t) {
    Vec3 v1 = curve_deriv(curve, t, 1);
    double speed = speed_checked(v1, t, "frenet apparatus");
    Vec3 v2 = curve_deriv(curve, t, 2);
    Vec3 cr = v1.cross(v2);
    double crn = cr.norm();
    double kappa = crn / (speed * speed * speed);
    if (!(kappa >= kKappaMin))
        fail(ErrorCode::FrameUndefined,
             "frenet apparatus: kappa = " + std::to_string(kappa) +
                 " at t = " + std::to_string(t) +
                 " is below the curvature cutoff; frame undefined");

    FrenetApparatus out;
    out.T = v1 / speed;
    out.B = cr / crn;
    out.N = out.B.cross(out.T);
    out.kappa = kappa;
    out.tau = cr.dot(curve_deriv(curve, t, 3)) / (crn * crn);
    return out;
}

FrenetApparatus frenet_apparatus(const CurveDef& curve, double s,
                                 const MonotoneTable& arc_table) {
    return frenet_at_t(curve, arc_table.inverse_at(s));
}

DarbouxSample darboux_at_t(const CurveOnSurface& curve, double t) {
    const CurveDef& sc = curve.space_curve;
    Vec3 v1 = curve_deriv(sc, t, 1);
    double speed = speed_checked(v1, t, "darboux frame");
    Vec3 T = v1 / speed;

    Vec3 n_raw = curve.surface_normal_at(t);
    Vec3 g = n_raw.cross(T);
    double glen = g.norm();
    if (!(glen > 1e-6))
        fail(ErrorCode::Regularity,
             "darboux frame: surface normal nearly parallel to the tangent "
             "at t = " + std::to_string(t));
    g = g / glen;
    Vec3 n = T.cross(g); // exact right-handed orthonormal triple

    Vec3 v2 = curve_deriv(sc, t, 2);
    Vec3 Tp = (v2 - T * T.dot(v2)) / (speed * speed); // dT/ds

    Vec3 cr = v1.cross(v2);
    double crn = cr.norm();
    double kappa = crn / (speed * speed * speed);
    if (!(kappa >= kKappaMin))
        fail(ErrorCode::FrameUndefined,
             "darboux frame: kappa = " + std::to_string(kappa) +
                 " at t = " + std::to_string(t) +
                 " is below the curvature cutoff; alpha undefined");
    double tau = cr.dot(curve_deriv(sc, t, 3)) / (crn * crn);

    double h = 1e-5 * std::max(1.0, std::fabs(t));
    Vec3 gp = (g_field(curve, t + h) - g_field(curve, t - h)) /
              (2.0 * h * speed); // dg/ds

    DarbouxSample out;
    out.p = sc.eval(t);
    out.T = T;
    out.g = g;
    out.n = n;
    out.k_g = Tp.dot(g);
    out.k_n = Tp.dot(n);
    out.t_g = gp.dot(n);
    out.kappa = kappa;
    out.tau = tau;
    out.alpha = std::atan2(out.k_n, out.k_g);
    return out;
}

DarbouxSample darboux_frame(const CurveOnSurface& curve, double s,
                            const MonotoneTable& arc_table) {
    double t = arc_table.inverse_at(s);
    DarbouxSample out = darboux_at_t(curve, t);
    out.s = s;
    auto kappa_of_s = [&](double sv) {
        return kappa_at_t(curve.space_curve, arc_table.inverse_at(sv));
    };
    out.theta = adaptive_gauss_legendre(kappa_of_s, arc_table.y_min(), s, 1e-12);
    return out;
}

FrameField sample_darboux(const CurveOnSurface& curve, int n,
                          std::string normal_convention) {
    if (n < 8)
        fail(ErrorCode::Validation,
             "sample_darboux: need at least 8 samples (got " +
                 std::to_string(n) + ")");

    MonotoneTable arc = arc_length_table(curve.space_curve, std::max(65, n + 1));
    double L = arc.y_max();

    auto kappa_of_s = [&](double s) {
        return kappa_at_t(curve.space_curve, arc.inverse_at(s));
    };

    FrameField field;
    field.length = L;
    field.normal_convention = std::move(normal_convention);
    field.name = curve.name;
    field.theta_of_s = theta_table(kappa_of_s, 0.0, L, std::max(65, n + 1));

    field.samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        double s = L * static_cast<double>(i) / (n - 1);
        DarbouxSample d = darboux_at_t(curve, arc.inverse_at(s));
        d.s = s;
        d.theta = field.theta_of_s.value_at(s);
        field.samples.push_back(d);
    }
    unwrap_alpha(field.samples);
    return field;
}

FrameField darboux_from_abstract(const std::function<double(double)>& kappa_of_theta,
                                 const std::function<double(double)>& tau_of_theta,
                                 const AlphaRule& rule, double s0, double s1,
                                 int n) {
    if (n < 8)
        fail(ErrorCode::Validation,
             "darboux_from_abstract: need at least 8 samples (got " +
                 std::to_string(n) + ")");
    if (!(s1 > s0))
        fail(ErrorCode::Validation,
             "darboux_from_abstract: empty arc-length range");

    double L = s1 - s0;
    bool principal = rule.kind == AlphaRule::Kind::TauIntegral;

    // state: [theta, alpha, p, T, g, n]
    using State = std::array<double, 14>;
    auto rhs = [&](const State& y, double) -> State {
        double theta = y[0], alpha = y[1];
        double kappa = kappa_of_theta(theta);
        if (!(kappa >= kKappaMin))
            fail(ErrorCode::SingularCurvature,
                 "darboux_from_abstract: kappa = " + std::to_string(kappa) +
                     " at theta = " + std::to_string(theta) +
                     " is below the curvature cutoff");
        double tau = tau_of_theta(theta);
        double kg = kappa * std::cos(alpha);
        double kn = kappa * std::sin(alpha);
        double tg = principal ? 0.0 : tau;

        Vec3 T{y[5], y[6], y[7]}, g{y[8], y[9], y[10]}, nn{y[11], y[12], y[13]};
        Vec3 dT = g * kg + nn * kn;
        Vec3 dg = T * (-kg) + nn * tg;
        Vec3 dn = T * (-kn) + g * (-tg);
        return {kappa,        principal ? tau : 0.0,
                T.x,  T.y,  T.z,
                dT.x, dT.y, dT.z,
                dg.x, dg.y, dg.z,
                dn.x, dn.y, dn.z};
    };

    State y{};
    y[0] = 0.0;
    y[1] = rule.alpha0;
    y[5] = 1.0;  // T = +x
    y[9] = 1.0;  // g = +y
    y[13] = 1.0; // n = +z

    int total_steps = std::max(4096, 8 * (n - 1));
    int substeps = (total_steps + n - 2) / (n - 1);
    double h = L / (static_cast<double>(n - 1) * substeps);

    FrameField field;
    field.length = L;
    field.normal_convention = "abstract";
    field.name = "abstract";
    field.samples.reserve(n);

    std::vector<double> s_nodes(n), theta_nodes(n);

    auto record = [&](int i, const State& y) {
        double s = L * static_cast<double>(i) / (n - 1);
        double theta = y[0], alpha = y[1];
        DarbouxSample d;
        d.s = s;
        d.theta = theta;
        d.alpha = alpha;
        d.kappa = kappa_of_theta(theta);
        d.tau = tau_of_theta(theta);
        d.k_g = d.kappa * std::cos(alpha);
        d.k_n = d.kappa * std::sin(alpha);
        d.t_g = principal ? 0.0 : d.tau;
        d.p = {y[2], y[3], y[4]};
        d.T = {y[5], y[6], y[7]};
        d.g = {y[8], y[9], y[10]};
        d.n = {y[11], y[12], y[13]};
        field.samples.push_back(d);
        s_nodes[i] = s;
        theta_nodes[i] = theta;
    };

    record(0, y);
    double s = 0.0;
    for (int i = 1; i < n; ++i) {
        for (int k = 0; k < substeps; ++k) {
            y = rk4_step(y, s, h, rhs);
            s += h;
            for (double v : y)
                if (!std::isfinite(v))
                    fail(ErrorCode::NonFinite,
                         "darboux_from_abstract: non-finite state near s = " +
                             std::to_string(s) + "; last good s = " +
                             std::to_string(s - h));
            Vec3 T{y[5], y[6], y[7]}, g{y[8], y[9], y[10]},
                nn{y[11], y[12], y[13]};
            double drift = gram_drift(T, g, nn);
            if (drift > kFrameDriftBudget)
                fail(ErrorCode::FrameDrift,
                     "darboux_from_abstract: frame drift " +
                         std::to_string(drift) + " at s = " +
                         std::to_string(s) + " exceeds the budget");
            polar_project(T, g, nn);
            y[5] = T.x;
            y[6] = T.y;
            y[7] = T.z;
            y[8] = g.x;
            y[9] = g.y;
            y[10] = g.z;
            y[11] = nn.x;
            y[12] = nn.y;
            y[13] = nn.z;
        }
        record(i, y);
    }

    field.theta_of_s = MonotoneTable(std::move(s_nodes), std::move(theta_nodes));
    return field;
}

} // namespace dbx
