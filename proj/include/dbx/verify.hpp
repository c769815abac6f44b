#pragma once

#include <string>
#include <vector>

#include "dbx/breadth.hpp"
#include "dbx/frames.hpp"

namespace dbx {

/// Outcome of one property check. `status` is "pass", "fail" or
/// "inconclusive"; `pass` is true only for "pass". `worst_at` is the
/// parameter value (s or theta, see `locus`) of the worst sample.
struct CheckResult {
    std::string name;
    std::string status = "fail";
    bool pass = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    double worst_at = 0.0;
    std::string locus; // "s" or "theta"
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    /// True only when every check passed outright; an inconclusive check
    /// means the property could not be established, so it does not count.
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

/// max |breadth(s) - median breadth| < tol * (1 + median).
/// Needs at least 32 samples.
CheckResult check_breadth_constancy(const BreadthPair& pair,
                                    double tol = 1e-9);

/// Collinearity of the partner's velocity with the base tangent: the angle
/// between the finite-differenced partner velocity and the tangent line must
/// stay below tol (radians), and sign(<velocity, T>) must match the sign of
/// the transport coefficient at every interior sample. Identity pairs
/// (median breadth < 1e-12) and degenerate velocities are inconclusive.
CheckResult check_tangent_opposition(const BreadthPair& pair,
                                     double tol = 1e-4);

/// max norm over interior grid nodes of (finite-difference dm/dtheta minus
/// the system right-hand side). Absolute tolerance. Needs a uniform grid of
/// at least 64 nodes. This is the oracle that adjudicates the oscillation
/// frequency of the helix closed forms.
CheckResult check_ode_residual(const CoefficientTrajectory& traj,
                               double tol = 1e-6);

/// max |m1(theta) * f(theta)| < tol * (1 + max|m1|) * (1 + max|f|).
CheckResult check_m1f_constraint(const CoefficientTrajectory& traj,
                                 double tol = 1e-12);

/// Frame residuals on a sampled field: orthonormality and handedness of
/// {T, g, n}, k_g^2 + k_n^2 = kappa^2, t_g = tau - dalpha/ds, and agreement
/// of {g, n} with the rotation of the normal/binormal pair by alpha.
/// Needs at least 8 samples on a uniform s-grid.
CheckResult check_frame_identities(const FrameField& field, double tol = 1e-6);

/// Radius bookkeeping between the two curves: with rho = 1/kappa from the
/// base samples and rho* = 1/kappa* recomputed from the partner positions by
/// finite differences, f must equal rho - sign(lambda) * rho* where lambda
/// is the tangential transport coefficient (equivalently f = rho + rho* on
/// arcs where the parametrizations run in opposite directions).
CheckResult check_f_consistency(const BreadthPair& pair, double tol = 1e-4);

struct VerifyTolerances {
    double frame = 1e-6;
    double ode = 1e-6;
    double m1f = 1e-12;
    double breadth = 1e-9;
    double tangent = 1e-4;
    double f_consistency = 1e-4;
};

/// Runs the full check battery for a constructed pair.
VerificationReport verify_pair(const FrameField& field,
                               const CoefficientTrajectory& traj,
                               const BreadthPair& pair,
                               const VerifyTolerances& tols = {});

} // namespace dbx
