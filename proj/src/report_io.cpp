#include "dbx/report_io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "json.hpp"

#include "dbx/error.hpp"

namespace dbx {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::ordered_json check_json(const CheckResult& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["status"] = c.status;
    j["pass"] = c.pass;
    j["max_residual"] = c.max_residual;
    j["tolerance"] = c.tolerance;
    j["worst_at"] = c.worst_at;
    j["locus"] = c.locus;
    j["detail"] = c.detail;
    return j;
}

} // namespace

std::string frame_csv(const FrameField& field) {
    std::string out =
        "s,theta,Tx,Ty,Tz,gx,gy,gz,nx,ny,nz,kappa,tau,k_g,k_n,t_g,alpha\n";
    for (const DarbouxSample& d : field.samples) {
        out += num(d.s) + ',' + num(d.theta) + ',';
        out += num(d.T.x) + ',' + num(d.T.y) + ',' + num(d.T.z) + ',';
        out += num(d.g.x) + ',' + num(d.g.y) + ',' + num(d.g.z) + ',';
        out += num(d.n.x) + ',' + num(d.n.y) + ',' + num(d.n.z) + ',';
        out += num(d.kappa) + ',' + num(d.tau) + ',';
        out += num(d.k_g) + ',' + num(d.k_n) + ',' + num(d.t_g) + ',';
        out += num(d.alpha) + '\n';
    }
    return out;
}

std::string trajectory_csv(const BreadthPair& pair) {
    std::string out = "theta,m1,m2,m3,f,breadth\n";
    for (std::size_t i = 0; i < pair.base.size(); ++i) {
        const CoeffSample& c = pair.coeffs[i];
        double breadth = (pair.partner[i] - pair.base[i].p).norm();
        out += num(pair.base[i].theta) + ',' + num(c.m1) + ',' + num(c.m2) +
               ',' + num(c.m3) + ',' + num(c.f) + ',' + num(breadth) + '\n';
    }
    return out;
}

std::string pair_obj(const BreadthPair& pair) {
    std::string out;
    std::size_t n = pair.base.size();
    out += "o beta\n";
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& p = pair.base[i].p;
        out += "v " + num(p.x) + ' ' + num(p.y) + ' ' + num(p.z) + '\n';
    }
    out += "l";
    for (std::size_t i = 1; i <= n; ++i) out += ' ' + std::to_string(i);
    out += "\no beta_star\n";
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& p = pair.partner[i];
        out += "v " + num(p.x) + ' ' + num(p.y) + ' ' + num(p.z) + '\n';
    }
    out += "l";
    for (std::size_t i = n + 1; i <= 2 * n; ++i)
        out += ' ' + std::to_string(i);
    out += '\n';
    return out;
}

std::string verification_json(const std::string& scenario,
                              const VerificationReport& rep) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["overall_pass"] = rep.all_passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : rep.checks) j["checks"].push_back(check_json(c));
    return j.dump(2) + "\n";
}

std::string classification_json(const std::string& scenario,
                                const CurveClass& cls) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["geodesic"] = cls.geodesic;
    j["asymptotic"] = cls.asymptotic_line;
    j["principal"] = cls.principal_line;
    j["planar"] = cls.planar;
    j["helix"] = cls.helix;
    j["epsilon"] = cls.epsilon;
    j["residuals"] = {{"geodesic", cls.residual_geodesic},
                      {"asymptotic", cls.residual_asymptotic},
                      {"principal", cls.residual_principal},
                      {"planar", cls.residual_planar},
                      {"helix", cls.residual_helix}};
    j["phi_mean"] = cls.phi_mean;
    j["tolerance"] = cls.tolerance;
    j["samples"] = cls.samples;
    j["length"] = cls.length;
    return j.dump(2) + "\n";
}

std::string frame_check_json(const std::string& scenario,
                             const CheckResult& check) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["overall_pass"] = check.pass;
    j["checks"] = nlohmann::ordered_json::array({check_json(check)});
    return j.dump(2) + "\n";
}

std::string run_metadata(const std::string& scenario_name,
                         const std::string& command) {
    char stamp[64] = "unknown";
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    if (gmtime_r(&now, &tm_utc))
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    std::string out;
    out += "scenario = " + scenario_name + "\n";
    out += "command = " + command + "\n";
    out += "written_utc = " + std::string(stamp) + "\n";
    return out;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
    std::filesystem::path dir = path.parent_path();
    std::error_code ec;
    if (!dir.empty()) std::filesystem::create_directories(dir, ec);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorCode::Validation,
                 "cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            fail(ErrorCode::Validation,
                 "failed while writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        fail(ErrorCode::Validation, "cannot rename '" + tmp.string() +
                                        "' to '" + path.string() + "': " +
                                        ec.message());
}

} // namespace dbx
