#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "dbx/catalog.hpp"
#include "dbx/curve.hpp"
#include "dbx/quadrature.hpp"
#include "dbx/table.hpp"

using dbx::CurveDef;
using dbx::ErrorCode;
using dbx::Vec3;
using testutil::thrown_code;
using testutil::thrown_message;

namespace {

const double kPi = 3.14159265358979323846;

CurveDef line_curve() {
    CurveDef c;
    c.eval = [](double t) { return Vec3{t, 0.0, 0.0}; };
    c.t0 = -1.0;
    c.t1 = 1.0;
    return c;
}

CurveDef circle_curve(bool analytic) {
    CurveDef c;
    c.eval = [](double t) { return Vec3{std::cos(t), std::sin(t), 0.0}; };
    if (analytic) {
        c.d1 = [](double t) { return Vec3{-std::sin(t), std::cos(t), 0.0}; };
        c.d2 = [](double t) { return Vec3{-std::cos(t), -std::sin(t), 0.0}; };
        c.d3 = [](double t) { return Vec3{std::sin(t), -std::cos(t), 0.0}; };
    }
    c.t0 = -2.0 * kPi;
    c.t1 = 2.0 * kPi;
    return c;
}

CurveDef helix_eval_only() {
    CurveDef c;
    c.eval = [](double t) { return Vec3{std::cos(t), std::sin(t), t}; };
    c.t0 = -1.0;
    c.t1 = 2.0 * kPi + 1.0;
    return c;
}

} // namespace

TEST_CASE("vec3 basics") {
    Vec3 a{1.0, 2.0, 2.0};
    Vec3 b{0.0, 1.0, 0.0};
    CHECK(a.norm() == doctest::Approx(3.0));
    CHECK(a.dot(b) == doctest::Approx(2.0));
    Vec3 c = Vec3{1.0, 0.0, 0.0}.cross(b);
    CHECK(c.x == doctest::Approx(0.0));
    CHECK(c.z == doctest::Approx(1.0));
    CHECK(dbx::angle_between(Vec3{1, 0, 0}, Vec3{0, 1, 0}) ==
          doctest::Approx(kPi / 2.0));
}

TEST_CASE("differentiate: straight line first derivative") {
    Vec3 d = dbx::differentiate(line_curve(), 0.3, 1);
    CHECK(d.x == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(d.y) < 1e-10);
    CHECK(std::fabs(d.z) < 1e-10);
}

TEST_CASE("differentiate: circle second derivative at t = 0") {
    Vec3 d = dbx::differentiate(circle_curve(true), 0.0, 2);
    CHECK(d.x == doctest::Approx(-1.0));
    CHECK(std::fabs(d.y) < 1e-12);
}

TEST_CASE("differentiate: sampled helix against analytic oracle") {
    // No analytic derivatives supplied, so the pinned-step central
    // difference runs; first order stays well inside 1e-8 of the oracle.
    CurveDef c = helix_eval_only();
    Vec3 d = dbx::differentiate(c, kPi / 2.0, 1);
    Vec3 oracle{-1.0, 0.0, 1.0};
    CHECK((d - oracle).norm() < 1e-8);
}

TEST_CASE("differentiate: analytic evaluators are passed through exactly") {
    auto curves = {dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi),
                   dbx::circle_on_plane(2.0, 0.0, 2.0 * kPi),
                   dbx::great_circle(1.0, 0.0, 2.0 * kPi),
                   dbx::wave_on_ellipsoid(1.0, 1.0, 1.0, 0.2, 0.3, 3.0, 0.0,
                                          2.0 * kPi)};
    for (const auto& cs : curves) {
        const CurveDef& c = cs.space_curve;
        for (int order = 1; order <= 3; ++order) {
            REQUIRE(c.has_analytic(order));
            for (double t : {0.4, 1.7, 5.1}) {
                Vec3 lib = dbx::differentiate(c, t, order);
                Vec3 direct = order == 1 ? c.d1(t)
                            : order == 2 ? c.d2(t)
                                         : c.d3(t);
                CHECK((lib - direct).norm() <=
                      1e-6 * std::max(1.0, direct.norm()));
            }
        }
    }
}

TEST_CASE("differentiate: order and domain validation") {
    CurveDef c = circle_curve(true);
    CHECK(thrown_code([&] { dbx::differentiate(c, 0.0, 4); }) ==
          ErrorCode::Validation);
    CHECK(thrown_code([&] { dbx::differentiate(c, 0.0, 0); }) ==
          ErrorCode::Validation);
    CHECK(thrown_code([&] { dbx::differentiate(c, 7.0, 1); }) ==
          ErrorCode::Domain);

    // Finite differencing needs a 2h margin; analytic access does not.
    CurveDef sampled = circle_curve(false);
    sampled.t0 = 0.0;
    CHECK(thrown_code([&] { dbx::differentiate(sampled, 0.0, 1); }) ==
          ErrorCode::Domain);
    CHECK(thrown_code([&] { dbx::differentiate(c, c.t0, 1); }) ==
          std::nullopt);
}

TEST_CASE("gauss-legendre rule integrates high-degree polynomials exactly") {
    std::vector<double> nodes, weights;
    dbx::gauss_legendre_rule(4, nodes, weights);
    REQUIRE(nodes.size() == 4);
    double integral = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        integral += weights[i] * std::pow(nodes[i], 6);
    CHECK(integral == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
    double weight_sum = weights[0] + weights[1] + weights[2] + weights[3];
    CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature on a smooth integrand") {
    double v = dbx::adaptive_gauss_legendre(
        [](double x) { return std::sin(x); }, 0.0, kPi, 1e-13);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("arc length: unit circle") {
    auto table = dbx::arc_length_table(circle_curve(true), 65);
    CHECK(table.value_at(2.0 * kPi) - table.value_at(0.0) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("arc length: unit-pitch helix has speed sqrt(2)") {
    auto helix = dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi);
    auto table = dbx::arc_length_table(helix.space_curve, 65);
    CHECK(table.value_at(2.0 * kPi) ==
          doctest::Approx(2.0 * kPi * std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("arc length: constant-speed segment") {
    CurveDef c;
    c.eval = [](double t) { return Vec3{2.0 * t, 0.0, 0.0}; };
    c.d1 = [](double) { return Vec3{2.0, 0.0, 0.0}; };
    c.t0 = 0.0;
    c.t1 = 1.0;
    auto table = dbx::arc_length_table(c, 33);
    CHECK(table.value_at(1.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("arc length: inverse round trip at every breakpoint") {
    auto helix = dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi);
    auto table = dbx::arc_length_table(helix.space_curve, 65);
    for (std::size_t i = 0; i < table.size(); ++i) {
        double t = table.breakpoints()[i];
        CHECK(std::fabs(table.inverse_at(table.value_at(t)) - t) < 1e-9);
    }
}

TEST_CASE("arc length: validation and regularity errors") {
    CHECK(thrown_code([&] {
              dbx::arc_length_table(circle_curve(true), 8);
          }) == ErrorCode::Validation);

    // Stationary point at t = 0.5: the speed drops below the regularity
    // floor near the stall (the flat spot is cubic, so quadrature nodes a
    // few 1e-4 away already see |dbeta/dt| ~ 1e-12) and the error names the
    // offending parameter value.
    CurveDef stalled;
    stalled.eval = [](double t) {
        double u = t - 0.5;
        return Vec3{0.25 * u * u * u * u, 0.0, 0.0};
    };
    stalled.d1 = [](double t) {
        double u = t - 0.5;
        return Vec3{u * u * u, 0.0, 0.0};
    };
    stalled.t0 = 0.0;
    stalled.t1 = 1.0;
    auto code = thrown_code([&] { dbx::arc_length_table(stalled, 33); });
    CHECK(code == ErrorCode::Regularity);
    std::string msg =
        thrown_message([&] { dbx::arc_length_table(stalled, 33); });
    CHECK(msg.find("t = 0.49") != std::string::npos);
}

TEST_CASE("theta table: constant curvature") {
    auto t1 = dbx::theta_table([](double) { return 1.0; }, 0.0, 2.0 * kPi, 65);
    CHECK(t1.value_at(2.0 * kPi) == doctest::Approx(2.0 * kPi).epsilon(1e-12));

    // kappa = a/(a^2+b^2) = 1/2 for the unit-pitch unit-radius helix.
    auto t2 = dbx::theta_table([](double) { return 0.5; }, 0.0, 4.0 * kPi, 65);
    CHECK(t2.value_at(4.0 * kPi) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(t2.value_at(0.0) == doctest::Approx(0.0));
}

TEST_CASE("theta table: strictly increasing with derivative kappa") {
    auto kappa = [](double s) { return 0.5 + 0.3 * std::sin(s); };
    auto table = dbx::theta_table(kappa, 0.0, 6.0, 129);
    const auto& xs = table.breakpoints();
    const auto& ys = table.values();
    for (std::size_t i = 1; i < xs.size(); ++i)
        CHECK(ys[i] > ys[i - 1]);
    // the monotone-cubic slopes are second order in the node spacing, so
    // the derivative tracks kappa to ~1e-4 here, not to round-off
    for (double s : {0.7, 2.9, 5.3})
        CHECK(table.deriv_at(s) == doctest::Approx(kappa(s)).epsilon(1e-3));
}

TEST_CASE("theta table: vanishing curvature is rejected") {
    CHECK(thrown_code([&] {
              dbx::theta_table([](double) { return 0.0; }, 0.0, 1.0, 33);
          }) == ErrorCode::SingularCurvature);
}

TEST_CASE("monotone table rejects non-monotone values") {
    std::vector<double> xs{0.0, 1.0, 2.0};
    CHECK(thrown_code([&] {
              dbx::MonotoneTable(xs, {0.0, 2.0, 1.0});
          }) == ErrorCode::Validation);
    CHECK(thrown_code([&] {
              dbx::MonotoneTable({0.0, 0.0, 2.0}, {0.0, 1.0, 2.0});
          }) == ErrorCode::Validation);
}

TEST_CASE("monotone table: decreasing data round trip") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> jitter(0.05, 0.4);
    std::vector<double> xs, ys;
    double x = 0.0, y = 4.0;
    for (int i = 0; i < 24; ++i) {
        xs.push_back(x);
        ys.push_back(y);
        x += jitter(rng);
        y -= jitter(rng);
    }
    dbx::MonotoneTable table(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(table.value_at(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-12));
        CHECK(table.inverse_at(ys[i]) == doctest::Approx(xs[i]).epsilon(1e-9));
    }
}
