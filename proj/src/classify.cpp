#include "dbx/classify.hpp"

#include <cmath>
#include <string>

#include "dbx/error.hpp"

namespace dbx {

CurveClass classify_curve(const std::vector<DarbouxSample>& samples,
                          double tol) {
    if (samples.size() < 8)
        fail(ErrorCode::Validation,
             "classify_curve: need at least 8 samples (got " +
                 std::to_string(samples.size()) + ")");
    if (!(tol > 0.0))
        fail(ErrorCode::Validation, "classify_curve: tolerance must be > 0");

    CurveClass out;
    out.tolerance = tol;
    out.samples = static_cast<int>(samples.size());
    out.length = samples.back().s - samples.front().s;
    if (!(out.length > 0.0))
        fail(ErrorCode::Validation,
             "classify_curve: samples span no arc length");

    double max_kg = 0.0, max_kn = 0.0, max_tg = 0.0, max_tau = 0.0;
    double phi_sum = 0.0;
    for (const auto& d : samples) {
        max_kg = std::max(max_kg, std::fabs(d.k_g));
        max_kn = std::max(max_kn, std::fabs(d.k_n));
        max_tg = std::max(max_tg, std::fabs(d.t_g));
        max_tau = std::max(max_tau, std::fabs(d.tau));
        phi_sum += d.tau / d.kappa;
    }
    out.phi_mean = phi_sum / static_cast<double>(samples.size());

    double max_phi_dev = 0.0;
    for (const auto& d : samples)
        max_phi_dev =
            std::max(max_phi_dev, std::fabs(d.tau / d.kappa - out.phi_mean));

    double L = out.length;
    out.residual_geodesic = max_kg * L;
    out.residual_asymptotic = max_kn * L;
    out.residual_principal = max_tg * L;
    out.residual_planar = max_tau * L;
    out.residual_helix = max_phi_dev;

    out.geodesic = out.residual_geodesic < tol;
    out.asymptotic_line = out.residual_asymptotic < tol;
    out.principal_line = out.residual_principal < tol;
    out.planar = out.residual_planar < tol;
    out.helix = max_phi_dev < tol * std::fabs(out.phi_mean) + tol;

    if (out.asymptotic_line) {
        // along an asymptotic line alpha stays at 0 or pi, so cos(alpha)
        // keeps one sign; report it
        double c0 = std::cos(samples.front().alpha);
        out.epsilon = (c0 >= 0.0) ? +1 : -1;
        for (const auto& d : samples) {
            int e = (std::cos(d.alpha) >= 0.0) ? +1 : -1;
            if (e != out.epsilon) {
                out.epsilon = 0; // sign flip: report as indeterminate
                break;
            }
        }
    }
    return out;
}

} // namespace dbx
