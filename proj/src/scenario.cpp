#include "dbx/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dbx/error.hpp"

namespace dbx {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Raw key/value store with consumption tracking so unknown keys surface as
// validation errors instead of being silently ignored.
class KeyBag {
  public:
    KeyBag(const std::string& text, const std::string& origin)
        : origin_(origin) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::size_t eq = t.find('=');
            if (eq == std::string::npos)
                fail(ErrorCode::Validation,
                     origin_ + ":" + std::to_string(lineno) +
                         ": expected 'key = value', got '" + t + "'");
            std::string key = trim(t.substr(0, eq));
            std::string value = trim(t.substr(eq + 1));
            if (key.empty())
                fail(ErrorCode::Validation,
                     origin_ + ":" + std::to_string(lineno) +
                         ": empty key before '='");
            if (!kv_.emplace(key, value).second)
                fail(ErrorCode::Validation,
                     origin_ + ": duplicate scenario field '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    bool has_prefix(const std::string& prefix) const {
        auto it = kv_.lower_bound(prefix);
        return it != kv_.end() && it->first.compare(0, prefix.size(),
                                                    prefix) == 0;
    }

    std::string take_string(const std::string& key, std::string def = "") {
        auto it = kv_.find(key);
        if (it == kv_.end()) return def;
        used_.insert(key);
        return it->second;
    }

    double take_double(const std::string& key, double def) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return def;
        used_.insert(key);
        return parse_double(key, it->second);
    }

    std::optional<double> take_double_opt(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        used_.insert(key);
        return parse_double(key, it->second);
    }

    int take_int(const std::string& key, int def) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return def;
        used_.insert(key);
        const std::string& v = it->second;
        int out = 0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || p != v.data() + v.size())
            fail(ErrorCode::Validation, origin_ + ": field '" + key +
                                            "' expects an integer, got '" +
                                            v + "'");
        return out;
    }

    void finish() const {
        for (const auto& [key, value] : kv_)
            if (!used_.count(key))
                fail(ErrorCode::Validation,
                     origin_ + ": unknown scenario field '" + key + "'");
    }

    const std::string& origin() const { return origin_; }

  private:
    double parse_double(const std::string& key, const std::string& v) {
        double out = 0.0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || p != v.data() + v.size())
            fail(ErrorCode::Validation, origin_ + ": field '" + key +
                                            "' expects a number, got '" + v +
                                            "'");
        return out;
    }

    std::string origin_;
    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

void check_enum(const KeyBag& bag, const std::string& key,
                const std::string& value,
                std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (value == a) return;
    std::string lst;
    for (const char* a : allowed) {
        if (!lst.empty()) lst += ", ";
        lst += a;
    }
    fail(ErrorCode::Validation, bag.origin() + ": field '" + key +
                                    "' must be one of {" + lst + "}, got '" +
                                    value + "'");
}

} // namespace

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin) {
    KeyBag bag(text, origin);
    Scenario sc;

    sc.name = bag.take_string("name");
    if (sc.name.empty())
        fail(ErrorCode::Validation,
             origin + ": field 'name' is required and must be nonempty");

    sc.samples = bag.take_int("samples", sc.samples);
    if (sc.samples < 64)
        fail(ErrorCode::Validation, origin +
                                        ": field 'samples' must be >= 64, "
                                        "got " + std::to_string(sc.samples));

    sc.tolerance = bag.take_double_opt("tolerance");
    if (sc.tolerance && !(*sc.tolerance > 0.0))
        fail(ErrorCode::Validation,
             origin + ": field 'tolerance' must be > 0");

    sc.has_surface = bag.has_prefix("surface.") || bag.has_prefix("curve.");
    sc.has_abstract = bag.has_prefix("abstract.");
    if (sc.has_surface && sc.has_abstract)
        fail(ErrorCode::Validation,
             origin + ": scenario mixes 'surface.*'/'curve.*' with "
                      "'abstract.*'; exactly one geometry route is allowed");
    if (!sc.has_surface && !sc.has_abstract)
        fail(ErrorCode::Validation,
             origin + ": scenario needs either 'surface.kind' + 'curve.kind' "
                      "or 'abstract.*' fields");

    if (sc.has_surface) {
        sc.surface_kind = bag.take_string("surface.kind");
        if (sc.surface_kind.empty())
            fail(ErrorCode::Validation,
                 origin + ": field 'surface.kind' is required");
        check_enum(bag, "surface.kind", sc.surface_kind,
                   {"plane", "cylinder", "sphere", "ellipsoid"});
        sc.surface_radius = bag.take_double("surface.radius", 1.0);
        sc.surface_ax = bag.take_double("surface.ax", 1.0);
        sc.surface_ay = bag.take_double("surface.ay", 1.0);
        sc.surface_az = bag.take_double("surface.az", 1.0);
        if (!(sc.surface_radius > 0.0))
            fail(ErrorCode::Validation,
                 origin + ": field 'surface.radius' must be > 0");
        if (!(sc.surface_ax > 0.0 && sc.surface_ay > 0.0 &&
              sc.surface_az > 0.0))
            fail(ErrorCode::Validation,
                 origin + ": fields 'surface.ax/ay/az' must be > 0");

        sc.curve_kind = bag.take_string("curve.kind");
        if (sc.curve_kind.empty())
            fail(ErrorCode::Validation,
                 origin + ": field 'curve.kind' is required");
        check_enum(bag, "curve.kind", sc.curve_kind,
                   {"helix", "circle", "great_circle", "wave"});
        sc.curve_a = bag.take_double("curve.a", sc.surface_radius);
        sc.curve_b = bag.take_double("curve.b", 1.0);
        sc.curve_radius = bag.take_double("curve.radius", 1.0);
        sc.curve_v0 = bag.take_double("curve.v0", 0.3);
        sc.curve_amp = bag.take_double("curve.amp", 0.25);
        sc.curve_freq = bag.take_int("curve.freq", 2);
        sc.curve_t0 = bag.take_double("curve.t0", sc.curve_t0);
        sc.curve_t1 = bag.take_double("curve.t1", sc.curve_t1);
        if (!(sc.curve_t1 > sc.curve_t0))
            fail(ErrorCode::Validation,
                 origin + ": field 'curve.t1' must be > 'curve.t0'");

        static const std::map<std::string, std::string> host{
            {"helix", "cylinder"},
            {"circle", "plane"},
            {"great_circle", "sphere"},
            {"wave", "ellipsoid"}};
        const std::string& want = host.at(sc.curve_kind);
        if (sc.surface_kind != want)
            fail(ErrorCode::Validation,
                 origin + ": field 'curve.kind' = '" + sc.curve_kind +
                     "' requires 'surface.kind' = '" + want + "', got '" +
                     sc.surface_kind + "'");
        if (sc.curve_kind == "helix" &&
            std::fabs(sc.curve_a - sc.surface_radius) >
                1e-12 * (1.0 + sc.surface_radius))
            fail(ErrorCode::Validation,
                 origin + ": field 'curve.a' must equal 'surface.radius' "
                          "for a helix on a cylinder");
    }

    if (sc.has_abstract) {
        sc.abstract_kappa = bag.take_double("abstract.kappa", 1.0);
        sc.abstract_tau = bag.take_double("abstract.tau", 0.0);
        if (!(sc.abstract_kappa > 0.0))
            fail(ErrorCode::Validation,
                 origin + ": field 'abstract.kappa' must be > 0");
        sc.abstract_alpha_rule =
            bag.take_string("abstract.alpha_rule", "constant");
        check_enum(bag, "abstract.alpha_rule", sc.abstract_alpha_rule,
                   {"constant", "tau_integral"});
        sc.abstract_alpha0 = bag.take_double("abstract.alpha0", 0.0);
        sc.abstract_s0 = bag.take_double("abstract.s0", sc.abstract_s0);
        sc.abstract_s1 = bag.take_double("abstract.s1", sc.abstract_s1);
        if (!(sc.abstract_s1 > sc.abstract_s0))
            fail(ErrorCode::Validation,
                 origin + ": field 'abstract.s1' must be > 'abstract.s0'");
    }

    sc.case_form = bag.take_string("case.form");
    if (!sc.case_form.empty())
        check_enum(bag, "case.form", sc.case_form,
                   {"geodesic_i", "geodesic_ii", "asymptotic_i",
                    "asymptotic_ii", "principal_helix", "principal_constant",
                    "integrate"});
    sc.c1 = bag.take_double("case.c1", 0.0);
    sc.c2 = bag.take_double("case.c2", 0.0);
    sc.c3 = bag.take_double("case.c3", 0.0);
    if (bag.has("case.epsilon")) {
        int e = bag.take_int("case.epsilon", 0);
        if (e != 1 && e != -1)
            fail(ErrorCode::Validation,
                 origin + ": field 'case.epsilon' must be +1 or -1");
        sc.case_epsilon = e;
    }
    sc.m1_0 = bag.take_double("case.m1_0", 0.0);
    sc.case_m2_0 = bag.take_double_opt("case.m2_0");
    sc.case_m3_0 = bag.take_double_opt("case.m3_0");
    sc.m2_0 = sc.case_m2_0.value_or(0.0);
    sc.m3_0 = sc.case_m3_0.value_or(0.0);
    sc.m1_const = bag.take_double("case.m1_const", 0.0);
    sc.steps = bag.take_int("case.steps", sc.steps);
    if (sc.steps < 64)
        fail(ErrorCode::Validation,
             origin + ": field 'case.steps' must be >= 64");
    sc.corrupt = bag.take_string("case.corrupt", "none");
    check_enum(bag, "case.corrupt", sc.corrupt,
               {"none", "m1f", "m2_half_scale", "m3_scale", "frame_g"});

    sc.output_basename = bag.take_string("output.basename", sc.name);

    bag.finish();
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::Validation,
             "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

} // namespace dbx
