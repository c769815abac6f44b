#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"

#include "dbx/breadth.hpp"
#include "dbx/catalog.hpp"
#include "dbx/frames.hpp"
#include "dbx/report_io.hpp"
#include "dbx/scenario.hpp"

using dbx::ErrorCode;
using testutil::split_csv_row;
using testutil::split_lines;
using testutil::thrown_code;
using testutil::thrown_message;

namespace {

const double kPi = 3.14159265358979323846;

std::string helix_text() {
    return "# demo run\n"
           "name = helix_demo\n"
           "\n"
           "surface.kind = cylinder\n"
           "surface.radius = 1\n"
           "curve.kind = helix\n"
           "curve.a = 1\n"
           "curve.b = 1\n"
           "case.form = geodesic_ii\n"
           "case.c1 = 1\n";
}

dbx::BreadthPair demo_pair() {
    auto field = dbx::sample_darboux(
        dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi), 48, "outward");
    double hi = field.samples.back().theta;
    auto traj = dbx::geodesic_closed_form_ii(1.0, 0.0, 1.0, -1e-9, hi + 1e-9);
    return dbx::construct_partner(field, traj);
}

} // namespace

TEST_CASE("scenario: defaults and comments") {
    auto sc = dbx::parse_scenario_text(helix_text(), "inline");
    CHECK(sc.name == "helix_demo");
    CHECK(sc.samples == 256);
    CHECK(sc.has_surface);
    CHECK_FALSE(sc.has_abstract);
    CHECK(sc.curve_t0 == 0.0);
    CHECK(sc.curve_t1 == doctest::Approx(2.0 * kPi));
    CHECK(sc.corrupt == "none");
    CHECK(sc.output_basename == "helix_demo");
    CHECK_FALSE(sc.tolerance.has_value());
    CHECK_FALSE(sc.case_epsilon.has_value());
}

TEST_CASE("scenario: abstract route") {
    auto sc = dbx::parse_scenario_text("name = a\n"
                                       "abstract.kappa = 0.5\n"
                                       "abstract.tau = 0.25\n"
                                       "abstract.alpha_rule = tau_integral\n"
                                       "abstract.s1 = 12.0\n"
                                       "case.form = integrate\n",
                                       "inline");
    CHECK(sc.has_abstract);
    CHECK(sc.abstract_kappa == 0.5);
    CHECK(sc.abstract_alpha_rule == "tau_integral");
}

TEST_CASE("scenario: malformed input names the offending field") {
    auto expect = [](const std::string& text, const std::string& needle) {
        auto code =
            thrown_code([&] { dbx::parse_scenario_text(text, "inline"); });
        REQUIRE(code == ErrorCode::Validation);
        std::string msg =
            thrown_message([&] { dbx::parse_scenario_text(text, "inline"); });
        CHECK_MESSAGE(msg.find(needle) != std::string::npos,
                      "message was: " << msg);
    };

    expect("surface.kind = plane\ncurve.kind = circle\ncase.form = integrate\n",
           "name");
    expect("name = x\ncase.form = integrate\n", "surface");
    expect(helix_text() + "abstract.kappa = 1\n", "abstract");
    expect(helix_text() + "bogus.key = 1\n", "bogus.key");
    expect(helix_text() + "case.c1 = 2\n", "case.c1"); // duplicate
    expect(helix_text() + "samples = 32\n", "samples");
    expect(helix_text() + "tolerance = 0\n", "tolerance");
    expect(helix_text() + "case.c3 = abc\n", "case.c3");
    expect(helix_text() + "case.epsilon = 2\n", "case.epsilon");
    expect(helix_text() + "case.steps = 12\n", "case.steps");
    expect(helix_text() + "case.corrupt = nonsense\n", "case.corrupt");
    expect("name = x\nsurface.kind = sphere\ncurve.kind = helix\n"
           "case.form = integrate\n",
           "curve.kind");
    expect("name = x\nsurface.kind = cylinder\nsurface.radius = 2\n"
           "curve.kind = helix\ncurve.a = 1\ncase.form = integrate\n",
           "curve.a");

    std::string bad_form = helix_text();
    bad_form.replace(bad_form.find("geodesic_ii"), 11, "quadratic");
    expect(bad_form, "case.form");
}

TEST_CASE("scenario: file round trip") {
    auto dir = testutil::tmp_dir("scenario_io");
    auto path = dir / "demo.scenario";
    testutil::write_file(path, helix_text());
    auto sc = dbx::parse_scenario_file(path.string());
    CHECK(sc.name == "helix_demo");
    CHECK(thrown_code([&] {
              dbx::parse_scenario_file((dir / "missing.scenario").string());
          }) == ErrorCode::Validation);
}

TEST_CASE("frame csv: header, size and round-trippable numbers") {
    auto field = dbx::sample_darboux(
        dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi), 48, "outward");
    std::string csv = dbx::frame_csv(field);
    auto lines = split_lines(csv);
    REQUIRE(lines.size() == 49);
    CHECK(lines[0] ==
          "s,theta,Tx,Ty,Tz,gx,gy,gz,nx,ny,nz,kappa,tau,k_g,k_n,t_g,alpha");
    auto row = split_csv_row(lines[20]);
    REQUIRE(row.size() == 17);
    // %.17g strings parse back to the exact double
    CHECK(std::strtod(row[0].c_str(), nullptr) == field.samples[19].s);
    CHECK(std::strtod(row[16].c_str(), nullptr) == field.samples[19].alpha);
}

TEST_CASE("trajectory csv: header and breadth column") {
    auto pair = demo_pair();
    std::string csv = dbx::trajectory_csv(pair);
    auto lines = split_lines(csv);
    REQUIRE(lines.size() == pair.base.size() + 1);
    CHECK(lines[0] == "theta,m1,m2,m3,f,breadth");
    auto breadth = testutil::csv_column(csv, "breadth");
    REQUIRE(breadth.size() == pair.base.size());
    for (double b : breadth)
        CHECK(b == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pair obj: two named polylines with 1-based shared index space") {
    auto pair = demo_pair();
    std::string obj = dbx::pair_obj(pair);
    auto lines = split_lines(obj);
    std::size_t n = pair.base.size();

    REQUIRE(lines.size() == 2 * n + 4);
    CHECK(lines[0] == "o beta");
    CHECK(lines[n + 2] == "o beta_star");
    for (std::size_t i = 1; i <= n; ++i) {
        CHECK(lines[i].substr(0, 2) == "v ");
        CHECK(lines[n + 2 + i].substr(0, 2) == "v ");
    }
    // first polyline: l 1 2 ... n; second: l n+1 ... 2n
    CHECK(lines[n + 1].substr(0, 4) == "l 1 ");
    CHECK(lines[2 * n + 3].find("l " + std::to_string(n + 1) + " ") == 0);
    std::string tail = lines[2 * n + 3];
    CHECK(tail.substr(tail.rfind(' ') + 1) == std::to_string(2 * n));
}

TEST_CASE("verification json shape") {
    auto field = dbx::sample_darboux(
        dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi), 64, "outward");
    dbx::VerificationReport rep;
    rep.checks.push_back(dbx::check_frame_identities(field));
    std::string text = dbx::verification_json("demo", rep);
    auto j = nlohmann::json::parse(text);
    CHECK(j["scenario"] == "demo");
    CHECK(j["overall_pass"] == true);
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["name"] == "frame_identities");
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["checks"][0].contains("max_residual"));
    CHECK(j["checks"][0].contains("tolerance"));
    CHECK(j["checks"][0].contains("worst_at"));
}

TEST_CASE("classification json shape") {
    auto field = dbx::sample_darboux(
        dbx::helix_on_cylinder(1.0, 1.0, 0.0, 2.0 * kPi), 64, "outward");
    auto cls = dbx::classify_curve(field.samples);
    auto j = nlohmann::json::parse(dbx::classification_json("demo", cls));
    CHECK(j["scenario"] == "demo");
    CHECK(j["geodesic"] == true);
    CHECK(j["helix"] == true);
    CHECK(j["asymptotic"] == false);
    CHECK(j["residuals"].contains("geodesic"));
    CHECK(j["phi_mean"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(j["samples"] == 64);
}

TEST_CASE("atomic writes leave no temporary and are deterministic") {
    auto dir = testutil::tmp_dir("report_io");
    auto pair = demo_pair();
    std::string csv = dbx::trajectory_csv(pair);

    auto path = dir / "t.csv";
    dbx::write_text_atomic(path, csv);
    dbx::write_text_atomic(path, csv); // overwrite is allowed
    CHECK(testutil::read_file(path) == csv);
    CHECK_FALSE(std::filesystem::exists(dir / "t.csv.tmp"));

    // byte-identical across repeated construction
    CHECK(dbx::trajectory_csv(demo_pair()) == csv);
    CHECK(dbx::pair_obj(demo_pair()) == dbx::pair_obj(demo_pair()));
}

TEST_CASE("run metadata carries scenario, command and a UTC stamp") {
    std::string meta = dbx::run_metadata("demo", "breadth");
    CHECK(meta.find("scenario = demo\n") != std::string::npos);
    CHECK(meta.find("command = breadth\n") != std::string::npos);
    CHECK(meta.find("written_utc = ") != std::string::npos);
    CHECK(meta.find("Z") != std::string::npos);
}
