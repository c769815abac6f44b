#include "dbx/breadth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbx/error.hpp"
#include "dbx/ode.hpp"

namespace dbx {

namespace {

std::vector<double> uniform_grid(double a, double b, int nodes,
                                 const char* who) {
    if (nodes < 8)
        fail(ErrorCode::Validation, std::string(who) +
                                        ": need at least 8 grid nodes (got " +
                                        std::to_string(nodes) + ")");
    if (!(b > a))
        fail(ErrorCode::Validation,
             std::string(who) + ": empty theta range");
    std::vector<double> g(nodes);
    for (int i = 0; i < nodes; ++i)
        g[i] = a + (b - a) * static_cast<double>(i) / (nodes - 1);
    g.back() = b;
    return g;
}

// Oscillating m1 shared by the helix closed forms. The prefactor is fixed at
// 1/sqrt(1 + phi0^2); the frequency depends on the requested mode.
struct Oscillator {
    double c1, c2, C0;
    double w0; // sqrt(1 + phi0^2)
    double W;  // oscillation frequency

    Oscillator(double c1_, double c2_, double phi0, FrequencyMode mode,
               double C0_ = 0.0)
        : c1(c1_), c2(c2_), C0(C0_), w0(std::sqrt(1.0 + phi0 * phi0)) {
        W = (mode == FrequencyMode::Consistent) ? w0 : w0 * w0;
    }

    double m1(double th) const {
        return (c1 * std::sin(W * th) - c2 * std::cos(W * th)) / w0 + C0;
    }
    double dm1(double th) const {
        return W * (c1 * std::cos(W * th) + c2 * std::sin(W * th)) / w0;
    }
    double ddm1(double th) const { return -W * W * (m1(th) - C0); }
    double dddm1(double th) const { return -W * W * dm1(th); }
};

void require_nonzero(double v, const char* what) {
    if (!(std::fabs(v) > 1e-12))
        fail(ErrorCode::Validation,
             std::string(what) + " must be nonzero for the helix closed forms");
}

void require_epsilon(int eps) {
    if (eps != 1 && eps != -1)
        fail(ErrorCode::Validation, "epsilon must be +1 or -1 (got " +
                                        std::to_string(eps) + ")");
}

// Fills grids by evaluating an exact CoeffSample map over a uniform grid.
CoefficientTrajectory from_analytic(std::function<CoeffSample(double)> eval,
                                    BreadthCase kind, CaseData data,
                                    double theta0, double theta1, int nodes,
                                    const char* who) {
    CoefficientTrajectory traj;
    traj.theta = uniform_grid(theta0, theta1, nodes, who);
    traj.kind = kind;
    traj.data = std::move(data);
    traj.provenance = Provenance::ClosedForm;
    traj.analytic = std::move(eval);
    std::size_t n = traj.theta.size();
    traj.m1.resize(n);
    traj.m2.resize(n);
    traj.m3.resize(n);
    traj.f.resize(n);
    traj.dm1.resize(n);
    traj.dm2.resize(n);
    traj.dm3.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        CoeffSample s = traj.analytic(traj.theta[i]);
        traj.m1[i] = s.m1;
        traj.m2[i] = s.m2;
        traj.m3[i] = s.m3;
        traj.f[i] = s.f;
        traj.dm1[i] = s.dm1;
        traj.dm2[i] = s.dm2;
        traj.dm3[i] = s.dm3;
    }
    traj.finalize();
    return traj;
}

} // namespace

std::array<double, 3> system_rhs(const BreadthCase& kind,
                                 const std::array<double, 3>& m, double theta,
                                 const CaseData& data) {
    double f = data.f_at(theta);
    switch (kind.tag) {
    case CaseTag::Geodesic: {
        if (!data.phi)
            fail(ErrorCode::Validation, "system_rhs: geodesic case needs phi");
        double phi = data.phi(theta);
        return {m[2] - f, phi * m[2], -m[0] - phi * m[1]};
    }
    case CaseTag::Asymptotic: {
        if (!data.phi)
            fail(ErrorCode::Validation,
                 "system_rhs: asymptotic case needs phi");
        require_epsilon(kind.epsilon);
        double phi = data.phi(theta);
        double e = kind.epsilon;
        return {e * m[1] - f, phi * m[2] - e * m[0], -phi * m[1]};
    }
    case CaseTag::Principal: {
        if (!data.alpha)
            fail(ErrorCode::Validation,
                 "system_rhs: principal case needs alpha");
        double a = data.alpha(theta);
        double ca = std::cos(a), sa = std::sin(a);
        return {m[1] * ca + m[2] * sa - f, -m[0] * ca, -m[0] * sa};
    }
    case CaseTag::General:
    default: {
        if (!data.rho_kg || !data.rho_kn || !data.rho_tg)
            fail(ErrorCode::Validation,
                 "system_rhs: general case needs rho_kg, rho_kn and rho_tg");
        double pkg = data.rho_kg(theta);
        double pkn = data.rho_kn(theta);
        double ptg = data.rho_tg(theta);
        return {pkg * m[1] + pkn * m[2] - f, ptg * m[2] - pkg * m[0],
                -pkn * m[0] - ptg * m[1]};
    }
    }
}

void CoefficientTrajectory::finalize() {
    if (theta.size() < 2)
        fail(ErrorCode::Validation,
             "CoefficientTrajectory: need at least 2 grid nodes");
    bool have_dm = dm1.size() == theta.size() && dm2.size() == theta.size() &&
                   dm3.size() == theta.size();
    if (have_dm) {
        im1_ = HermiteSeries(theta, m1, dm1);
        im2_ = HermiteSeries(theta, m2, dm2);
        im3_ = HermiteSeries(theta, m3, dm3);
    } else {
        im1_ = HermiteSeries(theta, m1);
        im2_ = HermiteSeries(theta, m2);
        im3_ = HermiteSeries(theta, m3);
        dm1.resize(theta.size());
        dm2.resize(theta.size());
        dm3.resize(theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i) {
            dm1[i] = im1_.deriv_at(theta[i]);
            dm2[i] = im2_.deriv_at(theta[i]);
            dm3[i] = im3_.deriv_at(theta[i]);
        }
    }
    if_ = HermiteSeries(theta, f);

    double q0 = m1[0] * m1[0] + m2[0] * m2[0] + m3[0] * m3[0];
    double worst = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double q = m1[i] * m1[i] + m2[i] * m2[i] + m3[i] * m3[i];
        worst = std::max(worst, std::fabs(q - q0));
    }
    conservation_drift = worst / std::max(q0, 1.0);
}

CoeffSample CoefficientTrajectory::at(double th) const {
    if (analytic) return analytic(th);
    if (theta.size() < 2)
        fail(ErrorCode::Validation, "CoefficientTrajectory: not finalized");
    CoeffSample out;
    out.m1 = im1_.value_at(th);
    out.m2 = im2_.value_at(th);
    out.m3 = im3_.value_at(th);
    out.f = if_.value_at(th);
    out.dm1 = im1_.deriv_at(th);
    out.dm2 = im2_.deriv_at(th);
    out.dm3 = im3_.deriv_at(th);
    return out;
}

CoefficientTrajectory integrate_system(const BreadthCase& kind,
                                       const CaseData& data,
                                       const std::array<double, 3>& m0,
                                       double theta0, double theta1,
                                       int steps) {
    if (!(theta1 > theta0))
        fail(ErrorCode::Validation, "integrate_system: empty theta range");
    if (steps < 64)
        fail(ErrorCode::Validation,
             "integrate_system: step would be coarser than range/64 (steps = " +
                 std::to_string(steps) + ")");

    double h = (theta1 - theta0) / steps;
    auto rhs = [&](const std::array<double, 3>& y, double t) {
        return system_rhs(kind, y, t, data);
    };

    CoefficientTrajectory traj;
    traj.kind = kind;
    traj.data = data;
    traj.provenance = Provenance::Integrated;
    traj.theta.reserve(steps + 1);
    traj.m1.reserve(steps + 1);

    std::array<double, 3> m = m0;
    for (int i = 0; i <= steps; ++i) {
        double th = (i == steps) ? theta1 : theta0 + h * i;
        std::array<double, 3> dm = rhs(m, th);
        traj.theta.push_back(th);
        traj.m1.push_back(m[0]);
        traj.m2.push_back(m[1]);
        traj.m3.push_back(m[2]);
        traj.f.push_back(data.f_at(th));
        traj.dm1.push_back(dm[0]);
        traj.dm2.push_back(dm[1]);
        traj.dm3.push_back(dm[2]);
        if (i < steps) {
            m = rk4_step(m, th, h, rhs);
            for (double v : m)
                if (!std::isfinite(v))
                    fail(ErrorCode::NonFinite,
                         "integrate_system: non-finite state; last good "
                         "theta = " + std::to_string(th));
        }
    }
    traj.finalize();
    return traj;
}

CoefficientTrajectory geodesic_closed_form_i(double c1, double c2, double phi0,
                                             double theta0, double theta1,
                                             int nodes, FrequencyMode mode,
                                             double m1_const) {
    require_nonzero(phi0, "phi0");
    Oscillator osc(c1, c2, phi0, mode, m1_const);
    auto eval = [osc, phi0](double th) {
        CoeffSample s;
        s.m1 = osc.m1(th);
        s.dm1 = osc.dm1(th);
        s.m2 = -(s.m1 + osc.ddm1(th)) / phi0;
        s.dm2 = -(s.dm1 + osc.dddm1(th)) / phi0;
        s.m3 = s.dm1;
        s.dm3 = osc.ddm1(th);
        s.f = 0.0;
        return s;
    };
    CaseData data;
    data.phi = [phi0](double) { return phi0; };
    return from_analytic(eval, BreadthCase{CaseTag::Geodesic, +1},
                         std::move(data), theta0, theta1, nodes,
                         "geodesic_closed_form_i");
}

CoefficientTrajectory geodesic_closed_form_ii(double c1, double c2,
                                              double phi0, double theta0,
                                              double theta1, int nodes) {
    require_nonzero(phi0, "phi0");
    auto f = [c1, c2, phi0](double th) {
        return c1 * std::cos(phi0 * th) + c2 * std::sin(phi0 * th);
    };
    auto eval = [c1, c2, phi0, f](double th) {
        CoeffSample s;
        double df = phi0 * (-c1 * std::sin(phi0 * th) + c2 * std::cos(phi0 * th));
        s.m1 = 0.0;
        s.dm1 = 0.0;
        s.m3 = f(th);
        s.dm3 = df;
        s.m2 = -df / phi0; // = c1 sin - c2 cos
        s.dm2 = phi0 * f(th);
        s.f = s.m3;
        return s;
    };
    CaseData data;
    data.phi = [phi0](double) { return phi0; };
    data.f = f;
    return from_analytic(eval, BreadthCase{CaseTag::Geodesic, +1},
                         std::move(data), theta0, theta1, nodes,
                         "geodesic_closed_form_ii");
}

CoefficientTrajectory asymptotic_closed_form_i(double c1, double c2,
                                               double phi0, int eps,
                                               double theta0, double theta1,
                                               int nodes, FrequencyMode mode,
                                               double m1_const) {
    require_nonzero(phi0, "phi0");
    require_epsilon(eps);
    Oscillator osc(c1, c2, phi0, mode, m1_const);
    double e = eps;
    auto eval = [osc, phi0, e](double th) {
        CoeffSample s;
        s.m1 = osc.m1(th);
        s.dm1 = osc.dm1(th);
        s.m2 = e * s.dm1;
        s.dm2 = e * osc.ddm1(th);
        s.m3 = e * (s.m1 + osc.ddm1(th)) / phi0;
        s.dm3 = e * (s.dm1 + osc.dddm1(th)) / phi0;
        s.f = 0.0;
        return s;
    };
    CaseData data;
    data.phi = [phi0](double) { return phi0; };
    return from_analytic(eval, BreadthCase{CaseTag::Asymptotic, eps},
                         std::move(data), theta0, theta1, nodes,
                         "asymptotic_closed_form_i");
}

CoefficientTrajectory asymptotic_closed_form_ii(double c1, double c2,
                                                double phi0, int eps,
                                                double theta0, double theta1,
                                                int nodes) {
    require_nonzero(phi0, "phi0");
    require_epsilon(eps);
    auto f = [c1, c2, phi0](double th) {
        return c1 * std::cos(phi0 * th) + c2 * std::sin(phi0 * th);
    };
    double e = eps;
    auto eval = [c1, c2, phi0, e, f](double th) {
        CoeffSample s;
        double fv = f(th);
        double df = phi0 * (-c1 * std::sin(phi0 * th) + c2 * std::cos(phi0 * th));
        s.m1 = 0.0;
        s.dm1 = 0.0;
        s.m2 = e * fv;
        s.dm2 = e * df;
        s.m3 = e * df / phi0;
        s.dm3 = -e * phi0 * fv; // e * ddf / phi0 with ddf = -phi0^2 f
        s.f = fv;
        return s;
    };
    CaseData data;
    data.phi = [phi0](double) { return phi0; };
    data.f = f;
    return from_analytic(eval, BreadthCase{CaseTag::Asymptotic, eps},
                         std::move(data), theta0, theta1, nodes,
                         "asymptotic_closed_form_ii");
}

std::array<double, 2> principal_consistent_initials(double c1, double c2,
                                                    double alpha0,
                                                    double alpha_dot,
                                                    FrequencyMode mode) {
    require_nonzero(alpha_dot, "alpha_dot");
    Oscillator osc(c1, c2, alpha_dot, mode);
    // A fixes the first system row at theta = 0, B its theta-derivative.
    double A = osc.dm1(0.0);
    double B = (osc.m1(0.0) + osc.ddm1(0.0)) / alpha_dot;
    double ca = std::cos(alpha0), sa = std::sin(alpha0);
    return {A * ca - B * sa, A * sa + B * ca};
}

CoefficientTrajectory principal_closed_form_helix(double c1, double c2,
                                                  double alpha0,
                                                  double alpha_dot,
                                                  double m2_0, double m3_0,
                                                  double theta0, double theta1,
                                                  int nodes,
                                                  FrequencyMode mode) {
    require_nonzero(alpha_dot, "alpha_dot");
    Oscillator osc(c1, c2, alpha_dot, mode);
    auto alpha = [alpha0, alpha_dot](double th) {
        return alpha0 + alpha_dot * th;
    };

    double a0 = alpha(theta0);
    double row1 = m2_0 * std::cos(a0) + m3_0 * std::sin(a0) - osc.dm1(theta0);
    if (!(std::fabs(row1) <= 1e-9))
        fail(ErrorCode::InconsistentData,
             "principal helix form: initial data violate the first system "
             "row at theta0 (residual = " + std::to_string(row1) + ")");

    CoefficientTrajectory traj;
    traj.theta = uniform_grid(theta0, theta1, nodes,
                              "principal_closed_form_helix");
    traj.kind = BreadthCase{CaseTag::Principal, +1};
    traj.data.alpha = alpha;
    traj.provenance = Provenance::ClosedForm;

    int total_steps = std::max(4096, 8 * (nodes - 1));
    int substeps = (total_steps + nodes - 2) / (nodes - 1);
    double h = (theta1 - theta0) / (static_cast<double>(nodes - 1) * substeps);

    auto rhs = [&](const std::array<double, 2>& y, double th) {
        (void)y;
        double m1v = osc.m1(th);
        return std::array<double, 2>{-m1v * std::cos(alpha(th)),
                                     -m1v * std::sin(alpha(th))};
    };

    std::size_t n = traj.theta.size();
    traj.m1.resize(n);
    traj.m2.resize(n);
    traj.m3.resize(n);
    traj.f.assign(n, 0.0);
    traj.dm1.resize(n);
    traj.dm2.resize(n);
    traj.dm3.resize(n);

    std::array<double, 2> y{m2_0, m3_0};
    double th = theta0;
    for (std::size_t i = 0; i < n; ++i) {
        double node = traj.theta[i];
        traj.m1[i] = osc.m1(node);
        traj.dm1[i] = osc.dm1(node);
        traj.m2[i] = y[0];
        traj.m3[i] = y[1];
        traj.dm2[i] = -traj.m1[i] * std::cos(alpha(node));
        traj.dm3[i] = -traj.m1[i] * std::sin(alpha(node));
        if (i + 1 < n) {
            for (int k = 0; k < substeps; ++k) {
                y = rk4_step(y, th, h, rhs);
                th += h;
            }
            th = traj.theta[i + 1];
        }
    }
    traj.finalize();
    return traj;
}

CoefficientTrajectory principal_closed_form_constant(
    double c2, double c3, const std::function<double(double)>& alpha,
    double theta0, double theta1, int nodes, double precond_tol) {
    if (!alpha)
        fail(ErrorCode::Validation,
             "principal_closed_form_constant: alpha map required");

    std::vector<double> grid =
        uniform_grid(theta0, theta1, nodes, "principal_closed_form_constant");
    std::size_t n = grid.size();
    double h = grid[1] - grid[0];

    std::vector<double> av(n);
    for (std::size_t i = 0; i < n; ++i) av[i] = alpha(grid[i]);

    // alpha'' (-c2 sin(alpha) + c3 cos(alpha)) must vanish: alpha linear in
    // theta or constant. Finite-differenced on the grid.
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dd;
        if (i == 0)
            dd = (2.0 * av[0] - 5.0 * av[1] + 4.0 * av[2] - av[3]) / (h * h);
        else if (i == n - 1)
            dd = (2.0 * av[n - 1] - 5.0 * av[n - 2] + 4.0 * av[n - 3] -
                  av[n - 4]) /
                 (h * h);
        else
            dd = (av[i - 1] - 2.0 * av[i] + av[i + 1]) / (h * h);
        double r = dd * (-c2 * std::sin(av[i]) + c3 * std::cos(av[i]));
        worst = std::max(worst, std::fabs(r));
    }
    double scale = 1.0 + std::hypot(c2, c3);
    if (!(worst <= precond_tol * scale))
        fail(ErrorCode::CaseInapplicable,
             "constant-offset principal form needs alpha linear or constant "
             "in theta (precondition residual = " + std::to_string(worst) +
                 ")");

    auto f = [c2, c3, alpha](double th) {
        double a = alpha(th);
        return c2 * std::cos(a) + c3 * std::sin(a);
    };
    auto eval = [c2, c3, f](double th) {
        CoeffSample s;
        s.m2 = c2;
        s.m3 = c3;
        s.f = f(th);
        return s;
    };
    CaseData data;
    data.alpha = alpha;
    data.f = f;
    return from_analytic(eval, BreadthCase{CaseTag::Principal, +1},
                         std::move(data), theta0, theta1, nodes,
                         "principal_closed_form_constant");
}

BreadthPair construct_partner(const FrameField& field,
                              const CoefficientTrajectory& coeffs) {
    const auto& samples = field.samples;
    if (samples.size() < 2)
        fail(ErrorCode::Validation,
             "construct_partner: need at least 2 samples");
    if (coeffs.size() < 2)
        fail(ErrorCode::Validation,
             "construct_partner: coefficient trajectory not built");

    double th_lo = samples.front().theta;
    double th_hi = samples.back().theta;
    double slack = 1e-9 * (1.0 + std::fabs(th_hi - th_lo));
    if (coeffs.theta_min() > th_lo + slack ||
        coeffs.theta_max() < th_hi - slack)
        fail(ErrorCode::RangeMismatch,
             "construct_partner: trajectory theta range [" +
                 std::to_string(coeffs.theta_min()) + ", " +
                 std::to_string(coeffs.theta_max()) +
                 "] does not cover the curve's [" + std::to_string(th_lo) +
                 ", " + std::to_string(th_hi) + "]");

    BreadthPair pair;
    pair.name = field.name;
    pair.normal_convention = field.normal_convention;
    pair.base = samples;
    std::size_t n = samples.size();
    pair.partner.resize(n);
    pair.coeffs.resize(n);
    pair.ds_star_ds.resize(n);
    pair.s_star.resize(n);
    pair.partner_rate.resize(n);

    std::vector<double> widths(n);
    for (std::size_t i = 0; i < n; ++i) {
        const DarbouxSample& d = samples[i];
        CoeffSample cs = coeffs.at(d.theta);
        pair.coeffs[i] = cs;
        Vec3 offset = d.T * cs.m1 + d.g * cs.m2 + d.n * cs.m3;
        pair.partner[i] = d.p + offset;
        widths[i] = offset.norm();

        // d/ds = kappa d/dtheta; rows follow the frame transport
        double m1p = d.kappa * cs.dm1;
        double m2p = d.kappa * cs.dm2;
        double m3p = d.kappa * cs.dm3;
        double lambda = 1.0 + m1p - cs.m2 * d.k_g - cs.m3 * d.k_n;
        double g_row = cs.m1 * d.k_g + m2p - cs.m3 * d.t_g;
        double n_row = cs.m1 * d.k_n + cs.m2 * d.t_g + m3p;
        pair.partner_rate[i] = d.T * lambda + d.g * g_row + d.n * n_row;
        pair.ds_star_ds[i] = -lambda;
    }

    pair.s_star[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double ds = samples[i].s - samples[i - 1].s;
        pair.s_star[i] = pair.s_star[i - 1] +
                         0.5 * ds *
                             (pair.partner_rate[i - 1].norm() +
                              pair.partner_rate[i].norm());
    }

    std::vector<double> sorted = widths;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                     sorted.end());
    pair.breadth_median = sorted[sorted.size() / 2];
    return pair;
}

} // namespace dbx
