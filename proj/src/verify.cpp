#include "dbx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dbx/error.hpp"

namespace dbx {

namespace {

double uniform_spacing(const std::vector<double>& x, const char* who) {
    if (x.size() < 2)
        fail(ErrorCode::Validation,
             std::string(who) + ": need at least 2 samples");
    double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i)
        if (std::fabs((x[i] - x[i - 1]) - h) > 1e-9 * (1.0 + std::fabs(h)))
            fail(ErrorCode::Validation,
                 std::string(who) + ": needs a uniform sample grid");
    return h;
}

// 4th-order central first derivative on a uniform grid.
double fd1(const std::vector<double>& y, std::size_t i, double h) {
    return (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) /
           (12.0 * h);
}

Vec3 fd1(const std::vector<Vec3>& y, std::size_t i, double h) {
    return (y[i + 2] * -1.0 + y[i + 1] * 8.0 - y[i - 1] * 8.0 + y[i - 2]) /
           (12.0 * h);
}

// 4th-order central second derivative on a uniform grid.
Vec3 fd2(const std::vector<Vec3>& y, std::size_t i, double h) {
    return (y[i + 2] * -1.0 + y[i + 1] * 16.0 - y[i] * 30.0 +
            y[i - 1] * 16.0 + y[i - 2] * -1.0) /
           (12.0 * h * h);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

CheckResult check_breadth_constancy(const BreadthPair& pair, double tol) {
    if (pair.base.size() < 32)
        fail(ErrorCode::Validation,
             "breadth constancy check needs at least 32 samples");
    CheckResult r;
    r.name = "breadth_constancy";
    r.tolerance = tol;
    r.locus = "s";

    double med = pair.breadth_median;
    for (std::size_t i = 0; i < pair.base.size(); ++i) {
        double w = (pair.partner[i] - pair.base[i].p).norm();
        double res = std::fabs(w - med);
        if (res >= r.max_residual) {
            r.max_residual = res;
            r.worst_at = pair.base[i].s;
        }
    }
    r.pass = r.max_residual < tol * (1.0 + med);
    r.status = r.pass ? "pass" : "fail";
    r.detail = "median breadth " + fmt(med);
    return r;
}

CheckResult check_tangent_opposition(const BreadthPair& pair, double tol) {
    if (pair.base.size() < 32)
        fail(ErrorCode::Validation,
             "tangent opposition check needs at least 32 samples");
    CheckResult r;
    r.name = "tangent_opposition";
    r.tolerance = tol;
    r.locus = "s";

    if (pair.breadth_median < 1e-12) {
        r.status = "inconclusive";
        r.detail = "identity pair (partner coincides with the base curve)";
        return r;
    }

    std::vector<double> s(pair.base.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = pair.base[i].s;
    double h = uniform_spacing(s, "tangent opposition check");

    std::size_t used = 0, degenerate = 0;
    bool sign_ok = true;
    double worst_sign_at = 0.0;
    for (std::size_t i = 2; i + 2 < pair.base.size(); ++i) {
        Vec3 d = fd1(pair.partner, i, h);
        double dn = d.norm();
        if (dn < 1e-12) {
            ++degenerate;
            continue;
        }
        ++used;
        const Vec3& T = pair.base[i].T;
        Vec3 dhat = d / dn;
        double angle = std::atan2(dhat.cross(T).norm(),
                                  std::fabs(dhat.dot(T)));
        if (angle >= r.max_residual) {
            r.max_residual = angle;
            r.worst_at = pair.base[i].s;
        }
        double lambda = -pair.ds_star_ds[i];
        if (lambda != 0.0) {
            double expected = lambda > 0.0 ? 1.0 : -1.0;
            double got = d.dot(T) > 0.0 ? 1.0 : -1.0;
            if (got != expected && sign_ok) {
                sign_ok = false;
                worst_sign_at = pair.base[i].s;
            }
        }
    }

    if (used == 0) {
        r.status = "inconclusive";
        r.detail = "all interior velocities degenerate";
        return r;
    }
    r.pass = r.max_residual < tol && sign_ok;
    r.status = r.pass ? "pass" : "fail";
    std::ostringstream d;
    d << used << " interior samples";
    if (degenerate > 0) d << ", " << degenerate << " degenerate (skipped)";
    if (!sign_ok)
        d << "; velocity sign disagrees with the transport coefficient at s="
          << fmt(worst_sign_at);
    r.detail = d.str();
    return r;
}

CheckResult check_ode_residual(const CoefficientTrajectory& traj, double tol) {
    if (traj.size() < 64)
        fail(ErrorCode::Validation,
             "ode residual check needs a grid of at least 64 nodes");
    double h = uniform_spacing(traj.theta, "ode residual check");

    CheckResult r;
    r.name = "ode_residual";
    r.tolerance = tol;
    r.locus = "theta";

    for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
        double th = traj.theta[i];
        std::array<double, 3> m{traj.m1[i], traj.m2[i], traj.m3[i]};
        std::array<double, 3> rhs = system_rhs(traj.kind, m, th, traj.data);
        // Row 1 must see the trajectory's own f samples, which may differ
        // from the case-data callable (e.g. injected corruptions).
        rhs[0] += traj.data.f_at(th) - traj.f[i];

        std::array<double, 3> fd{fd1(traj.m1, i, h), fd1(traj.m2, i, h),
                                 fd1(traj.m3, i, h)};
        for (int k = 0; k < 3; ++k) {
            double res = std::fabs(fd[k] - rhs[k]);
            if (res >= r.max_residual) {
                r.max_residual = res;
                r.worst_at = th;
            }
        }
    }
    r.pass = r.max_residual < tol;
    r.status = r.pass ? "pass" : "fail";
    return r;
}

CheckResult check_m1f_constraint(const CoefficientTrajectory& traj,
                                 double tol) {
    if (traj.size() < 2)
        fail(ErrorCode::Validation,
             "m1*f constraint check needs a built trajectory");
    CheckResult r;
    r.name = "m1f_constraint";
    r.tolerance = tol;
    r.locus = "theta";

    double max_m1 = 0.0, max_f = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        max_m1 = std::max(max_m1, std::fabs(traj.m1[i]));
        max_f = std::max(max_f, std::fabs(traj.f[i]));
        double res = std::fabs(traj.m1[i] * traj.f[i]);
        if (res >= r.max_residual) {
            r.max_residual = res;
            r.worst_at = traj.theta[i];
        }
    }
    r.pass = r.max_residual < tol * (1.0 + max_m1) * (1.0 + max_f);
    r.status = r.pass ? "pass" : "fail";
    r.detail = "max|m1| = " + fmt(max_m1) + ", max|f| = " + fmt(max_f);
    return r;
}

CheckResult check_frame_identities(const FrameField& field, double tol) {
    const auto& sm = field.samples;
    if (sm.size() < 8)
        fail(ErrorCode::Validation,
             "frame identity check needs at least 8 samples");

    std::vector<double> s(sm.size());
    std::vector<Vec3> T(sm.size());
    std::vector<double> alpha(sm.size());
    for (std::size_t i = 0; i < sm.size(); ++i) {
        s[i] = sm[i].s;
        T[i] = sm[i].T;
        alpha[i] = sm[i].alpha;
    }
    double h = uniform_spacing(s, "frame identity check");

    CheckResult r;
    r.name = "frame_identities";
    r.tolerance = tol;
    r.locus = "s";

    double worst_gram = 0.0, worst_curv = 0.0, worst_tg = 0.0,
           worst_rot = 0.0;
    auto track = [&](double res, double at) {
        if (res >= r.max_residual) {
            r.max_residual = res;
            r.worst_at = at;
        }
    };

    for (std::size_t i = 0; i < sm.size(); ++i) {
        const DarbouxSample& d = sm[i];
        double gram = 0.0;
        gram = std::max(gram, std::fabs(d.T.dot(d.T) - 1.0));
        gram = std::max(gram, std::fabs(d.g.dot(d.g) - 1.0));
        gram = std::max(gram, std::fabs(d.n.dot(d.n) - 1.0));
        gram = std::max(gram, std::fabs(d.T.dot(d.g)));
        gram = std::max(gram, std::fabs(d.T.dot(d.n)));
        gram = std::max(gram, std::fabs(d.g.dot(d.n)));
        gram = std::max(gram, (d.T.cross(d.g) - d.n).norm());
        worst_gram = std::max(worst_gram, gram);
        track(gram, d.s);

        double curv =
            std::fabs(d.k_g * d.k_g + d.k_n * d.k_n - d.kappa * d.kappa);
        worst_curv = std::max(worst_curv, curv);
        track(curv, d.s);
    }

    for (std::size_t i = 2; i + 2 < sm.size(); ++i) {
        const DarbouxSample& d = sm[i];
        double dalpha = fd1(alpha, i, h);
        double tg_res = std::fabs(d.t_g - (d.tau - dalpha));
        worst_tg = std::max(worst_tg, tg_res);
        track(tg_res, d.s);

        Vec3 Tp = fd1(T, i, h);
        double tp = Tp.norm();
        if (tp < 1e-12) continue; // locally straight: no normal direction
        Vec3 N = Tp / tp;
        Vec3 B = d.T.cross(N).normalized();
        double ca = std::cos(d.alpha), sa = std::sin(d.alpha);
        double rot = std::max((d.g - (N * ca - B * sa)).norm(),
                              (d.n - (N * sa + B * ca)).norm());
        worst_rot = std::max(worst_rot, rot);
        track(rot, d.s);
    }

    r.pass = r.max_residual < tol;
    r.status = r.pass ? "pass" : "fail";
    r.detail = "orthonormality " + fmt(worst_gram) + ", curvature split " +
               fmt(worst_curv) + ", geodesic torsion " + fmt(worst_tg) +
               ", normal rotation " + fmt(worst_rot);
    return r;
}

CheckResult check_f_consistency(const BreadthPair& pair, double tol) {
    if (pair.base.size() < 32)
        fail(ErrorCode::Validation,
             "f consistency check needs at least 32 samples");
    std::vector<double> s(pair.base.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = pair.base[i].s;
    double h = uniform_spacing(s, "f consistency check");

    CheckResult r;
    r.name = "f_consistency";
    r.tolerance = tol;
    r.locus = "s";

    std::size_t used = 0, skipped = 0;
    for (std::size_t i = 2; i + 2 < pair.base.size(); ++i) {
        Vec3 d1 = fd1(pair.partner, i, h);
        Vec3 d2 = fd2(pair.partner, i, h);
        double sp = d1.norm();
        double lambda = -pair.ds_star_ds[i];
        if (sp < 1e-6 || lambda == 0.0) {
            ++skipped; // partner momentarily stationary; curvature undefined
            continue;
        }
        double cr = d1.cross(d2).norm();
        double kstar = cr / (sp * sp * sp);
        if (kstar < 1e-9) {
            ++skipped; // partner locally straight; its radius is unbounded
            continue;
        }
        ++used;
        double rho = 1.0 / pair.base[i].kappa;
        double rho_star = 1.0 / kstar;
        double sgn = lambda > 0.0 ? 1.0 : -1.0;
        double f_curv = rho - sgn * rho_star;
        double res = std::fabs(f_curv - pair.coeffs[i].f);
        if (res >= r.max_residual) {
            r.max_residual = res;
            r.worst_at = pair.base[i].s;
        }
    }

    if (used == 0) {
        r.status = "inconclusive";
        r.detail = "no sample had a well-defined partner radius";
        return r;
    }
    r.pass = r.max_residual < tol;
    r.status = r.pass ? "pass" : "fail";
    std::ostringstream d;
    d << used << " interior samples";
    if (skipped > 0) d << ", " << skipped << " skipped";
    r.detail = d.str();
    return r;
}

VerificationReport verify_pair(const FrameField& field,
                               const CoefficientTrajectory& traj,
                               const BreadthPair& pair,
                               const VerifyTolerances& tols) {
    VerificationReport rep;
    rep.checks.push_back(check_frame_identities(field, tols.frame));
    rep.checks.push_back(check_ode_residual(traj, tols.ode));
    rep.checks.push_back(check_m1f_constraint(traj, tols.m1f));
    rep.checks.push_back(check_breadth_constancy(pair, tols.breadth));
    rep.checks.push_back(check_tangent_opposition(pair, tols.tangent));
    rep.checks.push_back(check_f_consistency(pair, tols.f_consistency));
    return rep;
}

} // namespace dbx
