#include "dbx/pipeline.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dbx/catalog.hpp"
#include "dbx/error.hpp"
#include "dbx/table.hpp"

namespace dbx {

namespace {

constexpr int kTrajectoryNodes = 4097;

struct AlphaFit {
    double alpha0 = 0.0;
    double slope = 0.0; // dalpha/dtheta
    double max_dev = 0.0;
};

// Least-squares line through (theta_i, alpha_i).
AlphaFit fit_alpha_line(const std::vector<DarbouxSample>& samples) {
    double n = static_cast<double>(samples.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& d : samples) {
        sx += d.theta;
        sy += d.alpha;
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& d : samples) {
        sxx += (d.theta - mx) * (d.theta - mx);
        sxy += (d.theta - mx) * (d.alpha - my);
    }
    AlphaFit fit;
    fit.slope = (sxx > 0.0) ? sxy / sxx : 0.0;
    fit.alpha0 = my - fit.slope * mx;
    for (const auto& d : samples)
        fit.max_dev = std::max(
            fit.max_dev, std::fabs(d.alpha - (fit.alpha0 + fit.slope * d.theta)));
    return fit;
}

// The geodesic closed forms are written for a surface normal aligned with
// the principal normal (sin(alpha) = +1). On a fixture oriented the other
// way (k_n = -kappa, as on the outward cylinder) the same solutions apply
// with the g- and n-components negated; the system such a trajectory solves
// is the general one with rho k_n = -1, so the tag is rewritten to match.
CoefficientTrajectory orient_geodesic(CoefficientTrajectory traj,
                                      const FrameField& field, double phi0) {
    double mean_kn = 0.0;
    for (const auto& d : field.samples)
        mean_kn += d.k_n;
    if (mean_kn >= 0.0)
        return traj;

    for (std::size_t i = 0; i < traj.size(); ++i) {
        traj.m2[i] = -traj.m2[i];
        traj.m3[i] = -traj.m3[i];
        traj.dm2[i] = -traj.dm2[i];
        traj.dm3[i] = -traj.dm3[i];
    }
    if (traj.analytic) {
        auto base = traj.analytic;
        traj.analytic = [base](double th) {
            CoeffSample s = base(th);
            s.m2 = -s.m2;
            s.m3 = -s.m3;
            s.dm2 = -s.dm2;
            s.dm3 = -s.dm3;
            return s;
        };
    }
    traj.kind = BreadthCase{CaseTag::General, +1};
    CaseData data;
    data.rho_kg = [](double) { return 0.0; };
    data.rho_kn = [](double) { return -1.0; };
    data.rho_tg = [phi0](double) { return phi0; };
    data.f = traj.data.f;
    traj.data = std::move(data);
    traj.finalize();
    return traj;
}

void require_flags(bool ok, const PipelineOptions& opt,
                   const std::string& form, const std::string& needs) {
    if (ok || opt.force) return;
    fail(ErrorCode::CaseInapplicable,
         "case.form '" + form + "' needs " + needs +
             " curve by classification; pass --force to run it anyway");
}

HermiteSeries series_over_theta(const std::vector<DarbouxSample>& samples,
                                double (*pick)(const DarbouxSample&)) {
    std::vector<double> xs(samples.size()), ys(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        xs[i] = samples[i].theta;
        ys[i] = pick(samples[i]);
    }
    return HermiteSeries(std::move(xs), std::move(ys));
}

} // namespace

FrameField build_frame_field(const Scenario& sc) {
    if (sc.has_abstract) {
        double kappa = sc.abstract_kappa;
        double tau = sc.abstract_tau;
        AlphaRule rule;
        rule.alpha0 = sc.abstract_alpha0;
        rule.kind = sc.abstract_alpha_rule == "tau_integral"
                        ? AlphaRule::Kind::TauIntegral
                        : AlphaRule::Kind::Constant;
        return darboux_from_abstract([kappa](double) { return kappa; },
                                     [tau](double) { return tau; }, rule,
                                     sc.abstract_s0, sc.abstract_s1,
                                     sc.samples);
    }

    if (sc.curve_kind == "helix")
        return sample_darboux(helix_on_cylinder(sc.surface_radius, sc.curve_b,
                                                sc.curve_t0, sc.curve_t1),
                              sc.samples, "outward");
    if (sc.curve_kind == "circle")
        return sample_darboux(
            circle_on_plane(sc.curve_radius, sc.curve_t0, sc.curve_t1),
            sc.samples, "+z");
    if (sc.curve_kind == "great_circle")
        return sample_darboux(
            great_circle(sc.surface_radius, sc.curve_t0, sc.curve_t1),
            sc.samples, "outward");
    if (sc.curve_kind == "wave")
        return sample_darboux(
            wave_on_ellipsoid(sc.surface_ax, sc.surface_ay, sc.surface_az,
                              sc.curve_v0, sc.curve_amp, sc.curve_freq,
                              sc.curve_t0, sc.curve_t1),
            sc.samples, "outward");
    fail(ErrorCode::Validation,
         "field 'curve.kind': unsupported value '" + sc.curve_kind + "'");
}

CoefficientTrajectory build_trajectory(const Scenario& sc,
                                       const FrameField& field,
                                       const CurveClass& cls,
                                       const PipelineOptions& opt) {
    if (sc.case_form.empty())
        fail(ErrorCode::Validation,
             "field 'case.form' is required for this command");

    double theta_lo = field.samples.front().theta;
    double theta_hi = field.samples.back().theta;
    const std::string& form = sc.case_form;

    if (form == "geodesic_i" || form == "geodesic_ii") {
        require_flags(cls.geodesic && cls.helix, opt, form,
                      "a geodesic helix");
        double phi0 = cls.phi_mean;
        if (form == "geodesic_i")
            return orient_geodesic(
                geodesic_closed_form_i(sc.c1, sc.c2, phi0, theta_lo, theta_hi,
                                       kTrajectoryNodes, opt.frequency,
                                       sc.m1_const),
                field, phi0);
        return orient_geodesic(geodesic_closed_form_ii(sc.c1, sc.c2, phi0,
                                                       theta_lo, theta_hi,
                                                       kTrajectoryNodes),
                               field, phi0);
    }

    if (form == "asymptotic_i" || form == "asymptotic_ii") {
        require_flags(cls.asymptotic_line && cls.helix, opt, form,
                      "an asymptotic helix");
        int eps = sc.case_epsilon.value_or(cls.epsilon);
        if (eps == 0)
            fail(ErrorCode::Validation,
                 "field 'case.epsilon' is required when the classification "
                 "does not provide a sign for cos(alpha)");
        double phi0 = cls.phi_mean;
        if (form == "asymptotic_i")
            return asymptotic_closed_form_i(sc.c1, sc.c2, phi0, eps, theta_lo,
                                            theta_hi, kTrajectoryNodes,
                                            opt.frequency, sc.m1_const);
        return asymptotic_closed_form_ii(sc.c1, sc.c2, phi0, eps, theta_lo,
                                         theta_hi, kTrajectoryNodes);
    }

    if (form == "principal_helix") {
        require_flags(cls.principal_line && cls.helix, opt, form,
                      "a principal-line helix");
        AlphaFit fit = fit_alpha_line(field.samples);
        if (fit.max_dev > 1e-6 * (1.0 + std::fabs(theta_hi - theta_lo)))
            fail(ErrorCode::CaseInapplicable,
                 "case.form 'principal_helix' needs alpha linear in theta; "
                 "max deviation from a line is " +
                     std::to_string(fit.max_dev));
        double m2_0, m3_0;
        if (sc.case_m2_0 || sc.case_m3_0) {
            m2_0 = sc.case_m2_0.value_or(0.0);
            m3_0 = sc.case_m3_0.value_or(0.0);
        } else {
            auto init = principal_consistent_initials(
                sc.c1, sc.c2, fit.alpha0, fit.slope, opt.frequency);
            m2_0 = init[0];
            m3_0 = init[1];
        }
        return principal_closed_form_helix(sc.c1, sc.c2, fit.alpha0,
                                           fit.slope, m2_0, m3_0, theta_lo,
                                           theta_hi, kTrajectoryNodes,
                                           opt.frequency);
    }

    if (form == "principal_constant") {
        require_flags(cls.principal_line, opt, form, "a principal-line");
        HermiteSeries alpha = series_over_theta(
            field.samples, [](const DarbouxSample& d) { return d.alpha; });
        return principal_closed_form_constant(
            sc.c2, sc.c3, [alpha](double th) { return alpha.value_at(th); },
            theta_lo, theta_hi, kTrajectoryNodes, opt.tolerance);
    }

    if (form == "integrate") {
        CaseData data;
        HermiteSeries pkg = series_over_theta(
            field.samples,
            [](const DarbouxSample& d) { return d.k_g / d.kappa; });
        HermiteSeries pkn = series_over_theta(
            field.samples,
            [](const DarbouxSample& d) { return d.k_n / d.kappa; });
        HermiteSeries ptg = series_over_theta(
            field.samples,
            [](const DarbouxSample& d) { return d.t_g / d.kappa; });
        data.rho_kg = [pkg](double th) { return pkg.value_at(th); };
        data.rho_kn = [pkn](double th) { return pkn.value_at(th); };
        data.rho_tg = [ptg](double th) { return ptg.value_at(th); };
        return integrate_system(BreadthCase{CaseTag::General, +1}, data,
                                {sc.m1_0, sc.m2_0, sc.m3_0}, theta_lo,
                                theta_hi, sc.steps);
    }

    fail(ErrorCode::Validation,
         "field 'case.form': unsupported value '" + form + "'");
}

void corrupt_field(const std::string& kind, FrameField& field) {
    if (kind != "frame_g") return;
    // Tilt each g toward n by a small random angle; breaks <g, n> = 0 while
    // keeping |g| = 1. Fixed seed so reruns stay byte-identical.
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> delta(5e-4, 2e-3);
    for (DarbouxSample& d : field.samples) {
        double a = delta(rng);
        d.g = d.g * std::cos(a) + d.n * std::sin(a);
    }
}

void corrupt_trajectory(const std::string& kind, CoefficientTrajectory& traj) {
    if (kind == "none" || kind == "frame_g") return;
    traj.analytic = nullptr; // checks must see the corrupted grids
    if (kind == "m1f") {
        for (std::size_t i = 0; i < traj.theta.size(); ++i) {
            double th = traj.theta[i];
            traj.m1[i] = std::sin(th);
            traj.dm1[i] = std::cos(th);
            traj.m2[i] = traj.m3[i] = 0.0;
            traj.dm2[i] = traj.dm3[i] = 0.0;
            traj.f[i] = std::sin(th);
        }
        traj.data.f = [](double th) { return std::sin(th); };
    } else if (kind == "m2_half_scale") {
        for (std::size_t i = traj.theta.size() / 2; i < traj.theta.size();
             ++i) {
            traj.m2[i] *= 1.01;
            traj.dm2[i] *= 1.01;
        }
    } else if (kind == "m3_scale") {
        for (std::size_t i = 0; i < traj.theta.size(); ++i) {
            traj.m3[i] *= 1.05;
            traj.dm3[i] *= 1.05;
        }
    } else {
        fail(ErrorCode::Validation,
             "field 'case.corrupt': unsupported value '" + kind + "'");
    }
    traj.finalize();
}

PipelineResult run_breadth_pipeline(const Scenario& sc,
                                    const PipelineOptions& opt) {
    PipelineResult res;
    res.field = build_frame_field(sc);
    res.classification = classify_curve(res.field.samples, opt.tolerance);
    res.trajectory = build_trajectory(sc, res.field, res.classification, opt);

    corrupt_field(sc.corrupt, res.field);
    corrupt_trajectory(sc.corrupt, res.trajectory);

    res.pair = construct_partner(res.field, res.trajectory);

    VerifyTolerances tols;
    tols.frame = opt.tolerance;
    res.report = verify_pair(res.field, res.trajectory, res.pair, tols);
    return res;
}

} // namespace dbx
