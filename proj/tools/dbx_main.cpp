#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dbx/classify.hpp"
#include "dbx/error.hpp"
#include "dbx/pipeline.hpp"
#include "dbx/report_io.hpp"
#include "dbx/scenario.hpp"
#include "dbx/verify.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInapplicable = 3;
constexpr int kExitVerification = 4;

int usage(std::ostream& os) {
    os << "usage: dbx <command> <scenario-file> [options]\n"
          "\n"
          "commands:\n"
          "  frame     write the sampled moving frame as CSV and check the\n"
          "            frame identities\n"
          "  classify  write the special-curve classification as JSON\n"
          "  breadth   build the partner curve; write the coefficient\n"
          "            trajectory CSV, the two-curve OBJ and the\n"
          "            verification JSON\n"
          "  verify    like breadth, but write only the verification JSON\n"
          "\n"
          "options:\n"
          "  --out DIR          output directory (default: current)\n"
          "  --force            run the case even if the classification\n"
          "                     disagrees with case.form\n"
          "  --paper-frequency  use the squared-frequency variant of the\n"
          "                     oscillating closed forms\n"
          "\n"
          "environment:\n"
          "  DBX_TOL            default classification/frame tolerance;\n"
          "                     the scenario's 'tolerance' field wins\n";
    return kExitValidation;
}

double resolve_tolerance(const dbx::Scenario& sc) {
    if (sc.tolerance) return *sc.tolerance;
    if (const char* env = std::getenv("DBX_TOL")) {
        std::string v(env);
        double out = 0.0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || p != v.data() + v.size() || !(out > 0.0))
            dbx::fail(dbx::ErrorCode::Validation,
                      "env DBX_TOL: expected a positive number, got '" + v +
                          "'");
        return out;
    }
    return 1e-6;
}

void print_check(const dbx::CheckResult& c) {
    std::cout << "  " << c.name << ": " << c.status
              << " (max_residual=" << c.max_residual
              << ", tolerance=" << c.tolerance << ")\n";
}

int cmd_frame(const dbx::Scenario& sc, const dbx::PipelineOptions& opt,
              const fs::path& outdir) {
    dbx::FrameField field = dbx::build_frame_field(sc);
    dbx::corrupt_field(sc.corrupt, field);
    dbx::CheckResult chk = dbx::check_frame_identities(field, opt.tolerance);

    fs::path base = outdir / sc.output_basename;
    dbx::write_text_atomic(base.string() + ".frame.csv",
                           dbx::frame_csv(field));
    dbx::write_text_atomic(base.string() + ".frame_checks.json",
                           dbx::frame_check_json(sc.name, chk));
    dbx::write_text_atomic(base.string() + ".meta.txt",
                           dbx::run_metadata(sc.name, "frame"));

    std::cout << sc.name << ": " << field.samples.size() << " samples, length "
              << field.length << "\n";
    print_check(chk);
    return chk.pass ? kExitOk : kExitVerification;
}

int cmd_classify(const dbx::Scenario& sc, const dbx::PipelineOptions& opt,
                 const fs::path& outdir) {
    dbx::FrameField field = dbx::build_frame_field(sc);
    dbx::CurveClass cls = dbx::classify_curve(field.samples, opt.tolerance);

    fs::path base = outdir / sc.output_basename;
    dbx::write_text_atomic(base.string() + ".classify.json",
                           dbx::classification_json(sc.name, cls));
    dbx::write_text_atomic(base.string() + ".meta.txt",
                           dbx::run_metadata(sc.name, "classify"));

    std::cout << sc.name << ": geodesic=" << cls.geodesic
              << " asymptotic=" << cls.asymptotic_line
              << " principal=" << cls.principal_line
              << " planar=" << cls.planar << " helix=" << cls.helix;
    if (cls.asymptotic_line) std::cout << " epsilon=" << cls.epsilon;
    std::cout << "\n";
    return kExitOk;
}

int cmd_breadth(const dbx::Scenario& sc, const dbx::PipelineOptions& opt,
                const fs::path& outdir, bool data_files) {
    dbx::PipelineResult res = dbx::run_breadth_pipeline(sc, opt);

    fs::path base = outdir / sc.output_basename;
    if (data_files) {
        dbx::write_text_atomic(base.string() + ".trajectory.csv",
                               dbx::trajectory_csv(res.pair));
        dbx::write_text_atomic(base.string() + ".pair.obj",
                               dbx::pair_obj(res.pair));
    }
    dbx::write_text_atomic(base.string() + ".verification.json",
                           dbx::verification_json(sc.name, res.report));
    dbx::write_text_atomic(
        base.string() + ".meta.txt",
        dbx::run_metadata(sc.name, data_files ? "breadth" : "verify"));

    bool ok = res.report.all_passed();
    std::cout << sc.name << ": case " << sc.case_form << ", breadth "
              << res.pair.breadth_median << ", "
              << (ok ? "all checks passed" : "verification FAILED") << "\n";
    for (const auto& c : res.report.checks) print_check(c);
    return ok ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.size() < 2) return usage(std::cerr);

    std::string command = args[0];
    std::string scenario_path = args[1];
    fs::path outdir = ".";
    bool force = false, paper_frequency = false;

    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i] == "--out") {
            if (i + 1 >= args.size()) {
                std::cerr << "error: --out needs a directory argument\n";
                return kExitValidation;
            }
            outdir = args[++i];
        } else if (args[i] == "--force") {
            force = true;
        } else if (args[i] == "--paper-frequency") {
            paper_frequency = true;
        } else {
            std::cerr << "error: unknown option '" << args[i] << "'\n";
            return usage(std::cerr);
        }
    }

    if (command != "frame" && command != "classify" && command != "breadth" &&
        command != "verify") {
        std::cerr << "error: unknown command '" << command << "'\n";
        return usage(std::cerr);
    }

    try {
        dbx::Scenario sc = dbx::parse_scenario_file(scenario_path);
        dbx::PipelineOptions opt;
        opt.force = force;
        opt.frequency = paper_frequency ? dbx::FrequencyMode::Squared
                                        : dbx::FrequencyMode::Consistent;
        opt.tolerance = resolve_tolerance(sc);

        if (command == "frame") return cmd_frame(sc, opt, outdir);
        if (command == "classify") return cmd_classify(sc, opt, outdir);
        return cmd_breadth(sc, opt, outdir, command == "breadth");
    } catch (const dbx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case dbx::ErrorCode::Validation:
            return kExitValidation;
        case dbx::ErrorCode::CaseInapplicable:
            return kExitInapplicable;
        default:
            return kExitRuntime;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
