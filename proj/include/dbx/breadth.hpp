#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dbx/frames.hpp"
#include "dbx/table.hpp"

namespace dbx {

// Which reduction of the coefficient system applies. The scalar data each
// case needs lives in CaseData; epsilon is the sign of cos(alpha) along an
// asymptotic line.
enum class CaseTag { Geodesic, Asymptotic, Principal, General };

struct BreadthCase {
    CaseTag tag = CaseTag::General;
    int epsilon = +1;
};

// Scalar inputs of the coefficient system, all functions of the turning
// angle theta. Only the members the case tag needs have to be set:
//   Geodesic/Asymptotic: phi = tau/kappa
//   Principal:           alpha
//   General:             rho_kg, rho_kn, rho_tg (rho = 1/kappa)
// f is the width forcing rho + rho*; empty means identically zero.
struct CaseData {
    std::function<double(double)> phi;
    std::function<double(double)> alpha;
    std::function<double(double)> rho_kg, rho_kn, rho_tg;
    std::function<double(double)> f;

    double f_at(double theta) const { return f ? f(theta) : 0.0; }
};

// Right-hand side of dm/dtheta for the offset coefficients m = (m1, m2, m3)
// of a constant-width partner beta* = beta + m1 T + m2 g + m3 n:
//   general     m1' = rho(m2 k_g + m3 k_n) - f
//               m2' = rho(m3 t_g - m1 k_g)
//               m3' = rho(-m1 k_n - m2 t_g)
//   geodesic    (k_g = 0, k_n = kappa, t_g = tau, phi = tau/kappa)
//               m1' = m3 - f,  m2' = phi m3,  m3' = -m1 - phi m2
//   asymptotic  (k_n = 0, k_g = eps kappa, t_g = tau)
//               m1' = eps m2 - f,  m2' = phi m3 - eps m1,  m3' = -phi m2
//   principal   (t_g = 0, alpha' = tau)
//               m1' = m2 cos(alpha) + m3 sin(alpha) - f
//               m2' = -m1 cos(alpha),  m3' = -m1 sin(alpha)
// With f = 0, m1 m1' + m2 m2' + m3 m3' = 0 in every case, so |m| is
// conserved; in general d(|m|^2)/dtheta = -2 m1 f.
std::array<double, 3> system_rhs(const BreadthCase& kind,
                                 const std::array<double, 3>& m, double theta,
                                 const CaseData& data);

enum class Provenance { ClosedForm, Integrated };

// Oscillation frequency used by the helix closed forms. Consistent is
// omega = sqrt(1 + phi0^2), the value forced by the coefficient system;
// Squared is omega = 1 + phi0^2, kept selectable so the difference stays
// demonstrable (it fails the system residual check).
enum class FrequencyMode { Consistent, Squared };

struct CoeffSample {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    double f = 0.0;
    double dm1 = 0.0, dm2 = 0.0, dm3 = 0.0; // d/dtheta
};

// Sampled coefficient trajectory on a uniform theta grid. Closed-form
// builders also attach an exact evaluator; sampled-only trajectories are
// interpolated with cubic Hermite segments through the stored derivatives.
struct CoefficientTrajectory {
    std::vector<double> theta;
    std::vector<double> m1, m2, m3, f;
    std::vector<double> dm1, dm2, dm3;

    BreadthCase kind;
    CaseData data; // scalar inputs the trajectory was built against
    Provenance provenance = Provenance::Integrated;
    double conservation_drift = 0.0; // max |Q - Q(0)| / max(Q(0), 1), Q = |m|^2

    std::function<CoeffSample(double)> analytic; // optional exact evaluator

    CoeffSample at(double theta) const;
    double theta_min() const { return theta.front(); }
    double theta_max() const { return theta.back(); }
    std::size_t size() const { return theta.size(); }

    // Rebuilds interpolants and the conservation figure from the current
    // grid values. Builders call this; call it again after editing grids.
    void finalize();

  private:
    HermiteSeries im1_, im2_, im3_, if_;
};

// Fixed-step fourth-order integration of the coefficient system. steps must
// give a step no coarser than range/64; every grid node is recorded.
CoefficientTrajectory integrate_system(const BreadthCase& kind,
                                       const CaseData& data,
                                       const std::array<double, 3>& m0,
                                       double theta0, double theta1,
                                       int steps = 4096);

// --- closed-form trajectories on helix data (phi = tau/kappa = phi0) ---
//
// All oscillating forms share m1 = (c1 sin(w theta) - c2 cos(w theta))
// / sqrt(1 + phi0^2) (+ optional constant term).

// Geodesic, zero forcing: m2 = -(m1 + m1'')/phi0, m3 = m1'. The optional
// constant term m1_const adds the homogeneous solution (C, -C/phi0, 0).
CoefficientTrajectory geodesic_closed_form_i(double c1, double c2, double phi0,
                                             double theta0, double theta1,
                                             int nodes = 4097,
                                             FrequencyMode mode = FrequencyMode::Consistent,
                                             double m1_const = 0.0);

// Geodesic, m1 = 0: f = c1 cos(phi0 theta) + c2 sin(phi0 theta), m3 = f,
// m2 = -m3'/phi0.
CoefficientTrajectory geodesic_closed_form_ii(double c1, double c2, double phi0,
                                              double theta0, double theta1,
                                              int nodes = 4097);

// Asymptotic, zero forcing: m2 = eps m1', m3 = eps (m1 + m1'')/phi0.
CoefficientTrajectory asymptotic_closed_form_i(double c1, double c2,
                                               double phi0, int eps,
                                               double theta0, double theta1,
                                               int nodes = 4097,
                                               FrequencyMode mode = FrequencyMode::Consistent,
                                               double m1_const = 0.0);

// Asymptotic, m1 = 0: m2 = eps f, m3 = m2'/phi0.
CoefficientTrajectory asymptotic_closed_form_ii(double c1, double c2,
                                                double phi0, int eps,
                                                double theta0, double theta1,
                                                int nodes = 4097);

// Principal line with alpha(theta) = alpha0 + alpha_dot * theta,
// alpha_dot constant and nonzero: m1 is the oscillating form with
// w = sqrt(1 + alpha_dot^2); m2 and m3 are integrated from
// m2' = -m1 cos(alpha), m3' = -m1 sin(alpha) starting at (m2_0, m3_0).
// The initial data must satisfy the first system row at theta0:
// |m2_0 cos(alpha(theta0)) + m3_0 sin(alpha(theta0)) - m1'(theta0)| <= 1e-9.
CoefficientTrajectory principal_closed_form_helix(double c1, double c2,
                                                  double alpha0,
                                                  double alpha_dot,
                                                  double m2_0, double m3_0,
                                                  double theta0, double theta1,
                                                  int nodes = 4097,
                                                  FrequencyMode mode = FrequencyMode::Consistent);

// Initial (m2, m3) for which the helix principal form satisfies the full
// system (first row and its derivative) at theta0 = 0.
std::array<double, 2> principal_consistent_initials(double c1, double c2,
                                                    double alpha0,
                                                    double alpha_dot,
                                                    FrequencyMode mode = FrequencyMode::Consistent);

// Principal line with constant offsets: m = (0, c2, c3),
// f = c2 cos(alpha) + c3 sin(alpha). Requires
// alpha''(theta) * (-c2 sin(alpha) + c3 cos(alpha)) = 0 on the grid
// (alpha linear in theta, or alpha constant); the residual is compared
// against precond_tol * (1 + |(c2, c3)|).
CoefficientTrajectory principal_closed_form_constant(double c2, double c3,
                                                     const std::function<double(double)>& alpha,
                                                     double theta0, double theta1,
                                                     int nodes = 4097,
                                                     double precond_tol = 1e-6);

// Partner curve and per-sample transport data. ds_star_ds is the signed
// rate -(1 + m1' - m3 k_n - m2 k_g) (prime = d/ds); s_star accumulates the
// geometric rate |dbeta*/ds|, leaving beta* unreparametrized.
struct BreadthPair {
    std::vector<DarbouxSample> base;
    std::vector<Vec3> partner;
    std::vector<CoeffSample> coeffs; // trajectory evaluated at sample theta
    std::vector<double> ds_star_ds;
    std::vector<double> s_star;
    std::vector<Vec3> partner_rate; // frame-route dbeta*/ds per sample
    double breadth_median = 0.0;
    std::string name;
    std::string normal_convention;
};

// Evaluates the trajectory along the sampled curve and offsets each sample
// by m1 T + m2 g + m3 n. The trajectory grid must cover the curve's
// turning-angle range.
BreadthPair construct_partner(const FrameField& field,
                              const CoefficientTrajectory& coeffs);

} // namespace dbx
