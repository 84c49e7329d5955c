#include "envlie/scene.hpp"

#include <fstream>

namespace envlie {

namespace {

using nlohmann::json;

[[noreturn]] void scene_error(const std::string& where, const std::string& what) {
    fail(errc::bad_scene, "scene: " + where + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object()) scene_error(where, "expected an object");
    const auto it = j.find(name);
    if (it == j.end()) scene_error(where, std::string("missing field '") + name + "'");
    return *it;
}

Rat rat_field(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return rat_from_string(j.get<std::string>());
        } catch (const Error& e) {
            scene_error(where, e.what());
        }
    }
    if (j.is_number_integer()) return Rat(j.get<long>());
    scene_error(where, "expected a rational as \"p/q\" string or integer");
}

Polynomial poly_field(const json& j, const std::string& where) {
    if (!j.is_array()) scene_error(where, "expected a coefficient array");
    std::vector<Rat> c;
    c.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        c.push_back(rat_field(j[i], where + "[" + std::to_string(i) + "]"));
    return Polynomial(std::move(c));
}

RationalFunction rf_field(const json& j, const std::string& where) {
    if (!j.is_object()) scene_error(where, "expected {num: [...], den: [...]}");
    Polynomial num = poly_field(field(j, "num", where), where + ".num");
    Polynomial den{Rat(1)};
    if (j.contains("den")) den = poly_field(j["den"], where + ".den");
    if (den.is_zero()) scene_error(where, "zero denominator");
    return RationalFunction(std::move(num), std::move(den));
}

json poly_to_json(const Polynomial& p) {
    json out = json::array();
    for (const Rat& c : p.coeffs()) out.push_back(to_string(c));
    if (out.empty()) out.push_back("0");
    return out;
}

json rf_to_json(const RationalFunction& f) {
    return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

} // namespace

Scene scene_from_json(const json& j) {
    // motion first: the elementary surface constructor needs it
    const json& jm = field(j, "motion", "root");
    const std::string group = field(jm, "group", "motion").get<std::string>();
    GroupTag tag;
    if (group == "SE3") tag = GroupTag::SE3;
    else if (group == "Aff3") tag = GroupTag::Aff3;
    else scene_error("motion.group", "must be \"SE3\" or \"Aff3\"");

    const json& jd = field(jm, "domain", "motion");
    if (!jd.is_array() || jd.size() != 2) scene_error("motion.domain", "expected [t_lo, t_hi]");
    Rat t_lo = rat_field(jd[0], "motion.domain[0]");
    Rat t_hi = rat_field(jd[1], "motion.domain[1]");

    const json& je = field(jm, "entries", "motion");
    if (!je.is_array() || je.size() != 4) scene_error("motion.entries", "expected 4 rows");
    Mat4<RationalFunction> entries;
    for (int r = 0; r < 4; ++r) {
        const json& row = je[static_cast<size_t>(r)];
        if (!row.is_array() || row.size() != 4)
            scene_error("motion.entries[" + std::to_string(r) + "]", "expected 4 entries");
        for (int c = 0; c < 4; ++c)
            entries(r, c) = rf_field(row[static_cast<size_t>(c)],
                                     "motion.entries[" + std::to_string(r) + "][" +
                                         std::to_string(c) + "]");
    }
    RationalMotion motion = [&] {
        try {
            return RationalMotion(std::move(entries), std::move(t_lo), std::move(t_hi), tag);
        } catch (const Error& e) {
            scene_error("motion", e.what());
        }
    }();

    const json& jel = field(j, "elementary", "root");
    const std::string kind = field(jel, "kind", "elementary").get<std::string>();
    SurfaceSystem system = [&]() -> SurfaceSystem {
        if (kind == "cone")
            return make_cone_system(rat_field(field(jel, "r", "elementary"), "elementary.r"),
                                    std::move(motion));
        if (kind == "sphere") return make_sphere_system(std::move(motion));
        if (kind == "paraboloid")
            return make_paraboloid_system(
                rat_field(field(jel, "a", "elementary"), "elementary.a"),
                rat_field(field(jel, "b", "elementary"), "elementary.b"), std::move(motion));
        if (kind == "custom") {
            const json& jc = field(jel, "coeffs", "elementary");
            if (!jc.is_array() || jc.size() != 10)
                scene_error("elementary.coeffs", "expected 10 coefficients in the basis "
                                                 "{x^2,y^2,z^2,xy,xz,yz,x,y,z,1}");
            std::array<Rat, 10> c;
            for (size_t i = 0; i < 10; ++i)
                c[i] = rat_field(jc[i], "elementary.coeffs[" + std::to_string(i) + "]");
            return make_custom_system(Quadric(std::move(c)), std::move(motion));
        }
        scene_error("elementary.kind", "must be cone, sphere, paraboloid or custom");
    }();

    if (j.contains("scale")) {
        system.scale = rf_field(j["scale"], "scale");
        if (system.scale.is_zero()) scene_error("scale", "lambda must be non-zero");
        if (has_root_in(system.scale.num(), system.motion.t_lo(), system.motion.t_hi()))
            scene_error("scale", "lambda vanishes inside the motion domain");
    }
    if (j.contains("description")) system.description = j["description"].get<std::string>();

    Scene scene{std::move(system), {}, {}};
    if (j.contains("outputs")) {
        const json& jo = j["outputs"];
        if (!jo.is_object()) scene_error("outputs", "expected an object of paths");
        for (const auto& [k, v] : jo.items()) scene.outputs[k] = v.get<std::string>();
    }
    if (j.contains("options")) {
        const json& jo = j["options"];
        SceneOptions& o = scene.options;
        if (jo.contains("t_samples")) o.t_samples = jo["t_samples"].get<int>();
        if (jo.contains("u_samples")) o.u_samples = jo["u_samples"].get<int>();
        if (jo.contains("tol")) o.tol = jo["tol"].get<double>();
        if (jo.contains("margin")) o.margin = jo["margin"].get<double>();
        if (jo.contains("branch")) o.branch = jo["branch"].get<int>();
        if (jo.contains("z_bounds")) {
            const json& jz = jo["z_bounds"];
            if (!jz.is_array() || jz.size() != 2)
                scene_error("options.z_bounds", "expected [z_min, z_max]");
            o.z_bounds = std::make_pair(rat_field(jz[0], "options.z_bounds[0]"),
                                        rat_field(jz[1], "options.z_bounds[1]"));
        }
        if (jo.contains("u_window")) {
            const json& jw = jo["u_window"];
            if (!jw.is_array() || jw.size() != 2)
                scene_error("options.u_window", "expected [lo, hi]");
            o.u_window_lo = rat_field(jw[0], "options.u_window[0]");
            o.u_window_hi = rat_field(jw[1], "options.u_window[1]");
        }
        if (jo.contains("trace")) {
            const json& jt = jo["trace"];
            if (jt.contains("step")) o.trace.step = jt["step"].get<double>();
            if (jt.contains("tol")) o.trace.tol = jt["tol"].get<double>();
            if (jt.contains("box")) o.trace.box_halfwidth = jt["box"].get<double>();
            if (jt.contains("max_points")) o.trace.max_points = jt["max_points"].get<int>();
        }
        if (o.t_samples < 2 || o.u_samples < 2)
            scene_error("options", "t_samples and u_samples must be >= 2");
    }
    return scene;
}

nlohmann::json scene_to_json(const Scene& scene) {
    json j;
    const SurfaceSystem& sys = scene.system;
    if (!sys.description.empty()) j["description"] = sys.description;
    switch (sys.kind) {
        case ElementaryKind::cone:
            j["elementary"] = {{"kind", "cone"}, {"r", to_string(sys.cone_r)}};
            break;
        case ElementaryKind::sphere:
            j["elementary"] = {{"kind", "sphere"}};
            break;
        case ElementaryKind::paraboloid:
            j["elementary"] = {{"kind", "paraboloid"},
                               {"a", to_string(sys.qbar[0])},
                               {"b", to_string(sys.qbar[1])}};
            break;
        case ElementaryKind::custom: {
            json c = json::array();
            for (size_t i = 0; i < 10; ++i) c.push_back(to_string(sys.qbar[i]));
            j["elementary"] = {{"kind", "custom"}, {"coeffs", std::move(c)}};
            break;
        }
    }
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(rf_to_json(sys.motion.entries()(r, c)));
        rows.push_back(std::move(row));
    }
    j["motion"] = {{"group", tag_name(sys.motion.tag())},
                   {"domain", {to_string(sys.motion.t_lo()), to_string(sys.motion.t_hi())}},
                   {"entries", std::move(rows)}};
    if (!(sys.scale == RationalFunction(Rat(1)))) j["scale"] = rf_to_json(sys.scale);
    if (!scene.outputs.empty()) {
        json jo;
        for (const auto& [k, v] : scene.outputs) jo[k] = v;
        j["outputs"] = std::move(jo);
    }
    const SceneOptions& o = scene.options;
    json jo;
    jo["t_samples"] = o.t_samples;
    jo["u_samples"] = o.u_samples;
    jo["tol"] = o.tol;
    jo["margin"] = o.margin;
    jo["branch"] = o.branch;
    if (o.z_bounds)
        jo["z_bounds"] = {to_string(o.z_bounds->first), to_string(o.z_bounds->second)};
    jo["u_window"] = {to_string(o.u_window_lo), to_string(o.u_window_hi)};
    jo["trace"] = {{"step", o.trace.step},
                   {"tol", o.trace.tol},
                   {"box", o.trace.box_halfwidth},
                   {"max_points", o.trace.max_points}};
    j["options"] = std::move(jo);
    return j;
}

Scene load_scene(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) fail(errc::bad_scene, "cannot open scene file: " + path.string());
    json j;
    try {
        j = json::parse(is); // nlohmann reports line/column in its message
    } catch (const json::parse_error& e) {
        fail(errc::bad_scene, "scene parse error in " + path.string() + ": " + e.what());
    }
    return scene_from_json(j);
}

std::vector<Rat> uniform_grid(const Rat& lo, const Rat& hi, int n) {
    if (n < 2) fail(errc::invalid_input, "uniform_grid: n must be >= 2");
    std::vector<Rat> g;
    g.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * Rat(i) / Rat(n - 1));
    return g;
}

} // namespace envlie
