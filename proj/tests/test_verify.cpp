#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "dbx/breadth.hpp"
#include "dbx/catalog.hpp"
#include "dbx/frames.hpp"
#include "dbx/pipeline.hpp"
#include "dbx/scenario.hpp"
#include "dbx/verify.hpp"

using dbx::BreadthPair;
using dbx::CaseTag;
using dbx::CoefficientTrajectory;
using dbx::ErrorCode;
using dbx::FrameField;
using dbx::FrequencyMode;
using testutil::thrown_code;

namespace {

const double kPi = 3.14159265358979323846;

FrameField helix_field(int n = 256) {
    return dbx::sample_darboux(dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi),
                               n, "outward");
}

// Helix scenario with a chosen coefficient case, run through the pipeline.
dbx::Scenario helix_scenario(const std::string& form,
                             const std::string& corrupt = "none") {
    std::string text = "name = t\n"
                       "surface.kind = cylinder\n"
                       "surface.radius = 1\n"
                       "curve.kind = helix\n"
                       "curve.a = 1\n"
                       "curve.b = 1\n"
                       "case.form = " + form + "\n"
                       "case.c1 = 1\n"
                       "case.corrupt = " + corrupt + "\n";
    return dbx::parse_scenario_text(text, "inline");
}

const dbx::CheckResult& find_check(const dbx::VerificationReport& report,
                                   const std::string& name) {
    for (const auto& c : report.checks)
        if (c.name == name) return c;
    REQUIRE_MESSAGE(false, "missing check: " << name);
    static dbx::CheckResult dummy;
    return dummy;
}

} // namespace

TEST_CASE("verify: geodesic pair on the helix passes the whole battery") {
    for (const char* form : {"geodesic_i", "geodesic_ii"}) {
        auto res = dbx::run_breadth_pipeline(helix_scenario(form), {});
        for (const auto& c : res.report.checks)
            CHECK_MESSAGE(c.pass, form << " / " << c.name << ": " << c.detail);
        CHECK(res.report.all_passed());
        CHECK(res.report.checks.size() == 6);
    }
}

TEST_CASE("verify: constant-offset pairs pass on both orientation branches") {
    // plane circle: the partner tangent opposes (lambda < 0)
    auto circle = dbx::sample_darboux(dbx::circle_on_plane(2.0, 0.0, 2.0 * kPi),
                                      256, "+z");
    double hi = circle.samples.back().theta;
    auto traj = dbx::principal_closed_form_constant(
        3.0, 4.0, [](double) { return 0.0; }, -1e-9, hi + 1e-9);
    auto pair = dbx::construct_partner(circle, traj);
    auto report = dbx::verify_pair(circle, traj, pair);
    CHECK(report.all_passed());
    const auto& tangent = find_check(report, "tangent_opposition");
    CHECK(tangent.pass);

    // great circle: same construction, partner tangent runs parallel
    auto gc = dbx::sample_darboux(dbx::great_circle(1.0, 0.0, 2.0 * kPi), 256,
                                  "outward");
    double hi2 = gc.samples.back().theta;
    auto traj2 = dbx::principal_closed_form_constant(
        3.0, 4.0, [](double) { return -kPi / 2.0; }, -1e-9, hi2 + 1e-9);
    auto pair2 = dbx::construct_partner(gc, traj2);
    auto rep2 = dbx::verify_pair(gc, traj2, pair2);
    CHECK(rep2.all_passed());
    const auto& f2 = find_check(rep2, "f_consistency");
    CHECK(f2.pass);
}

TEST_CASE("verify: breadth constancy flags a scaled second half") {
    auto res = dbx::run_breadth_pipeline(
        helix_scenario("geodesic_ii", "m2_half_scale"), {});
    const auto& breadth = find_check(res.report, "breadth_constancy");
    CHECK_FALSE(breadth.pass);
    CHECK(breadth.status == "fail");
    CHECK(breadth.max_residual > breadth.tolerance);
    // the corruption lives in the second half of the theta range
    CHECK(breadth.worst_at > res.pair.base.front().s);
    CHECK_FALSE(res.report.all_passed());
}

TEST_CASE("verify: tangent opposition flags a scaled normal component") {
    auto res = dbx::run_breadth_pipeline(
        helix_scenario("geodesic_ii", "m3_scale"), {});
    const auto& tangent = find_check(res.report, "tangent_opposition");
    CHECK_FALSE(tangent.pass);
    CHECK(tangent.max_residual > tangent.tolerance);
}

TEST_CASE("verify: identity pair is inconclusive, not passing") {
    auto field = helix_field(64);
    auto traj = dbx::integrate_system(
        {CaseTag::Geodesic, +1},
        [] {
            dbx::CaseData d;
            d.phi = [](double) { return 1.0; };
            return d;
        }(),
        {0.0, 0.0, 0.0}, -0.1, field.samples.back().theta + 0.1, 512);
    auto pair = dbx::construct_partner(field, traj);
    auto tangent = dbx::check_tangent_opposition(pair);
    CHECK(tangent.status == "inconclusive");
    CHECK_FALSE(tangent.pass);
    auto report = dbx::verify_pair(field, traj, pair);
    CHECK_FALSE(report.all_passed());
}

TEST_CASE("verify: system residual separates the two frequency choices") {
    double hi = 2.0 * kPi;
    auto good = dbx::geodesic_closed_form_i(1.0, 0.0, 1.0, 0.0, hi, 513,
                                            FrequencyMode::Consistent);
    auto good_check = dbx::check_ode_residual(good);
    CHECK(good_check.pass);
    CHECK(good_check.max_residual < 1e-6);

    auto bad = dbx::geodesic_closed_form_i(1.0, 0.0, 1.0, 0.0, hi, 513,
                                           FrequencyMode::Squared);
    auto bad_check = dbx::check_ode_residual(bad);
    CHECK_FALSE(bad_check.pass);
    CHECK(bad_check.max_residual > 0.5);

    // the two frequencies coalesce as phi0 -> 0 (the squared-mode residual
    // scales like phi0 itself; at 1e-8 the two omegas round to the same
    // double and only the differencing noise of the check remains)
    auto tiny = dbx::geodesic_closed_form_i(1.0, 0.0, 1e-8, 0.0, hi, 513,
                                            FrequencyMode::Squared);
    CHECK(dbx::check_ode_residual(tiny).max_residual < 1e-6);
}

TEST_CASE("verify: m1 f obstruction") {
    auto clean = dbx::geodesic_closed_form_i(1.0, 0.3, 0.8, 0.0, 2.0 * kPi);
    auto ok = dbx::check_m1f_constraint(clean);
    CHECK(ok.pass);
    CHECK(ok.max_residual < 1e-12);

    auto forced = dbx::geodesic_closed_form_ii(0.7, 0.0, 1.2, 0.0, 2.0 * kPi);
    CHECK(dbx::check_m1f_constraint(forced).pass); // m1 = 0 identically

    auto res = dbx::run_breadth_pipeline(helix_scenario("geodesic_ii", "m1f"),
                                         {});
    const auto& violated = find_check(res.report, "m1f_constraint");
    CHECK_FALSE(violated.pass);
    CHECK(violated.max_residual > 1e-3);
}

TEST_CASE("verify: frame identities pass on clean fields, fail on tilted g") {
    auto field = helix_field();
    auto ok = dbx::check_frame_identities(field);
    CHECK(ok.pass);
    CHECK(ok.max_residual < 1e-6);

    dbx::corrupt_field("frame_g", field);
    auto bad = dbx::check_frame_identities(field);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_residual > 1e-4);
}

TEST_CASE("verify: frame identities on abstract principal data") {
    dbx::AlphaRule rule{dbx::AlphaRule::Kind::TauIntegral, 0.3};
    auto field = dbx::darboux_from_abstract([](double) { return 0.5; },
                                            [](double) { return 0.35; }, rule,
                                            0.0, 2.0 * kPi, 129);
    auto ok = dbx::check_frame_identities(field);
    CHECK_MESSAGE(ok.pass, ok.detail);
}

TEST_CASE("verify: f consistency adjudicates a mislabelled forcing") {
    // An m1 = 0 asymptotic solution dropped onto the geodesic helix passes
    // every intrinsic check (it solves its own system, keeps its norm, and
    // stays collinear) but claims a forcing the geometry contradicts; only
    // the curvature-based f comparison can see that.
    auto field = helix_field();
    double hi = field.samples.back().theta;
    auto traj = dbx::asymptotic_closed_form_ii(0.3, 0.0, 1.0, +1, -1e-9,
                                               hi + 1e-9);
    auto pair = dbx::construct_partner(field, traj);
    auto report = dbx::verify_pair(field, traj, pair);

    CHECK(find_check(report, "ode_residual").pass);
    CHECK(find_check(report, "m1f_constraint").pass);
    CHECK(find_check(report, "breadth_constancy").pass);
    CHECK(find_check(report, "tangent_opposition").pass);
    const auto& fc = find_check(report, "f_consistency");
    CHECK_FALSE(fc.pass);
    CHECK(fc.max_residual > 0.1);
    CHECK_FALSE(report.all_passed());
}

TEST_CASE("verify: empty report does not pass") {
    dbx::VerificationReport r;
    CHECK_FALSE(r.all_passed());
}

TEST_CASE("verify: sample-count preconditions") {
    auto field = helix_field(16);
    double hi = field.samples.back().theta;
    auto traj = dbx::geodesic_closed_form_ii(1.0, 0.0, 1.0, -1e-9, hi + 1e-9);
    auto pair = dbx::construct_partner(field, traj);
    CHECK(thrown_code([&] { dbx::check_breadth_constancy(pair); }) ==
          ErrorCode::Validation);
    CHECK(thrown_code([&] { dbx::check_tangent_opposition(pair); }) ==
          ErrorCode::Validation);
    CHECK(thrown_code([&] { dbx::check_f_consistency(pair); }) ==
          ErrorCode::Validation);
}
