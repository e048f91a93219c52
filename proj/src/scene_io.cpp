#include "pssph/scene_io.hpp"

#include <filesystem>
#include <fstream>

#include "pssph/errors.hpp"

namespace pssph {

using nlohmann::json;

namespace {

json vec2_to_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec2_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(std::string("scene: ") + what + " must be a [x, y] pair");
    return Vec2{j[0].get<double>(), j[1].get<double>()};
}

const char* plane_name(PlaneKind plane) {
    return plane == PlaneKind::stress ? "stress" : "strain";
}

PlaneKind plane_from(const std::string& s) {
    if (s == "stress") return PlaneKind::stress;
    if (s == "strain") return PlaneKind::strain;
    throw ConfigError("scene: plane must be 'stress' or 'strain', got '" + s + "'");
}

const char* eq_strain_name(EquivalentStrain eq) {
    return eq == EquivalentStrain::principal ? "principal" : "von_mises";
}

EquivalentStrain eq_strain_from(const std::string& s) {
    if (s == "principal") return EquivalentStrain::principal;
    if (s == "von_mises") return EquivalentStrain::von_mises;
    throw ConfigError("scene: equivalent_strain must be 'principal' or 'von_mises', got '" +
                      s + "'");
}

const char* bond_length_name(BondLength mode) {
    return mode == BondLength::rest ? "rest" : "characteristic";
}

BondLength bond_length_from(const std::string& s) {
    if (s == "rest") return BondLength::rest;
    if (s == "characteristic") return BondLength::characteristic;
    throw ConfigError("scene: bond_length must be 'rest' or 'characteristic', got '" + s +
                      "'");
}

const char* signal_name(SignalKind kind) {
    switch (kind) {
        case SignalKind::none: return "none";
        case SignalKind::sinusoid: return "sinusoid";
        case SignalKind::accelerogram: return "accelerogram";
    }
    return "none";
}

SignalKind signal_from(const std::string& s) {
    if (s == "none") return SignalKind::none;
    if (s == "sinusoid") return SignalKind::sinusoid;
    if (s == "accelerogram") return SignalKind::accelerogram;
    throw ConfigError("scene: excitation kind must be none|sinusoid|accelerogram, got '" + s +
                      "'");
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
    const auto it = obj.find(key);
    if (it != obj.end()) out = it->get<T>();
}

}  // namespace

json scene_to_json(const Scene& scene) {
    json doc;
    doc["schema_version"] = scene.schema_version;
    doc["name"] = scene.name;

    json mats = json::array();
    for (const MaterialEntry& entry : scene.materials) {
        const Material& m = entry.mat;
        mats.push_back(json{{"name", entry.name},
                            {"E_Pa", m.E},
                            {"nu", m.nu},
                            {"rho0_kg_m3", m.rho0},
                            {"f_t_Pa", m.f_t},
                            {"f_c_Pa", m.f_c},
                            {"G_f_N_m", m.G_f},
                            {"eps0", m.eps0},
                            {"h_c_m", m.h_c}});
    }
    doc["materials"] = mats;

    json regions = json::array();
    for (const RegionPolygon& region : scene.regions) {
        json verts = json::array();
        for (const Vec2& v : region.polygon.vertices) verts.push_back(vec2_to_json(v));
        regions.push_back(json{{"label", region.label},
                               {"material", scene.materials[region.material_id].name},
                               {"vertices_m", verts}});
    }
    doc["regions"] = regions;

    const NumericalParams& p = scene.num;
    doc["numerics"] = json{{"dp_m", p.dp},
                           {"h_m", p.h},
                           {"dt_s", p.dt},
                           {"t_end_s", p.t_end},
                           {"cfl", p.cfl},
                           {"eta1", p.eta1},
                           {"eta2", p.eta2},
                           {"eps_reg", p.eps_reg},
                           {"alpha_1_s", p.alpha},
                           {"beta_s", p.beta},
                           {"gravity_m_s2", p.gravity},
                           {"gravity_on", p.gravity_on},
                           {"plane", plane_name(p.plane)},
                           {"equivalent_strain", eq_strain_name(p.eq_strain)},
                           {"bond_length", bond_length_name(p.bond_length)}};

    json exc;
    exc["kind"] = signal_name(scene.excitation.kind);
    if (scene.excitation.kind == SignalKind::sinusoid) {
        exc["amplitude_g"] = scene.excitation.amplitude_g;
        exc["period_s"] = scene.excitation.period_s;
        exc["direction"] = vec2_to_json(scene.excitation.direction);
    } else if (scene.excitation.kind == SignalKind::accelerogram) {
        exc["file"] = scene.excitation.accelerogram_file;
    }
    doc["excitation"] = exc;

    doc["boundary"] = json{{"enabled", scene.boundary.enabled},
                           {"band_m", scene.boundary.band_m},
                           {"include_sides", scene.boundary.include_sides},
                           {"region", scene.boundary.region_label}};

    doc["preload"] = json{{"enabled", scene.preload.enabled},
                          {"relax_alpha_1_s", scene.preload.relax_alpha},
                          {"ke_tol_J_kg", scene.preload.ke_tol},
                          {"max_steps", scene.preload.max_steps},
                          {"check_every", scene.preload.check_every}};

    doc["initial_condition"] = json{{"kind", scene.init.kind},
                                    {"amplitude", scene.init.amplitude},
                                    {"center_m", vec2_to_json(scene.init.center)},
                                    {"width_m", scene.init.width_m},
                                    {"direction", vec2_to_json(scene.init.direction)}};

    doc["output"] = json{{"directory", scene.output.directory},
                         {"snapshot_interval_s", scene.output.snapshot_interval_s},
                         {"log_every_steps", scene.output.log_every_steps},
                         {"vtk", scene.output.vtk},
                         {"dump_bonds", scene.output.dump_bonds}};
    return doc;
}

Scene scene_from_json(const json& doc, std::vector<std::string>* notices) {
    Scene scene;
    if (!doc.is_object()) throw ConfigError("scene: document root must be an object");
    read_if(doc, "schema_version", scene.schema_version);
    if (scene.schema_version != 1)
        throw ConfigError("scene: unsupported schema_version " +
                          std::to_string(scene.schema_version));
    read_if(doc, "name", scene.name);

    if (!doc.contains("materials") || !doc["materials"].is_array() || doc["materials"].empty())
        throw ConfigError("scene: 'materials' must be a nonempty array");
    for (const json& jm : doc["materials"]) {
        MaterialEntry entry;
        if (!jm.contains("name")) throw ConfigError("scene: material entry missing 'name'");
        entry.name = jm["name"].get<std::string>();
        read_if(jm, "E_Pa", entry.mat.E);
        read_if(jm, "nu", entry.mat.nu);
        read_if(jm, "rho0_kg_m3", entry.mat.rho0);
        read_if(jm, "f_t_Pa", entry.mat.f_t);
        read_if(jm, "f_c_Pa", entry.mat.f_c);
        read_if(jm, "G_f_N_m", entry.mat.G_f);
        read_if(jm, "eps0", entry.mat.eps0);
        read_if(jm, "h_c_m", entry.mat.h_c);
        scene.materials.push_back(entry);
    }

    if (!doc.contains("regions") || !doc["regions"].is_array() || doc["regions"].empty())
        throw ConfigError("scene: 'regions' must be a nonempty array");
    for (const json& jr : doc["regions"]) {
        RegionPolygon region;
        if (!jr.contains("label")) throw ConfigError("scene: region entry missing 'label'");
        region.label = jr["label"].get<std::string>();
        if (!jr.contains("material"))
            throw ConfigError("scene: region '" + region.label + "' missing 'material'");
        const std::string mat_name = jr["material"].get<std::string>();
        region.material_id = scene.material_index(mat_name);
        if (region.material_id < 0)
            throw ConfigError("scene: region '" + region.label +
                              "' references unknown material '" + mat_name + "'");
        if (!jr.contains("vertices_m"))
            throw ConfigError("scene: region '" + region.label + "' missing 'vertices_m'");
        for (const json& jv : jr["vertices_m"])
            region.polygon.vertices.push_back(vec2_from_json(jv, "region vertex"));
        scene.regions.push_back(region);
    }

    NumericalParams& p = scene.num;
    const json empty = json::object();
    const json& jn = doc.contains("numerics") ? doc["numerics"] : empty;
    if (!jn.contains("dp_m")) throw ConfigError("scene: numerics.dp_m is required");
    p.dp = jn["dp_m"].get<double>();
    if (jn.contains("h_m")) {
        p.h = jn["h_m"].get<double>();
    } else {
        p.h = 0.9 * p.dp;
        if (notices)
            notices->push_back("notice: h_m omitted; defaulted to 0.9*dp_m = " +
                               std::to_string(p.h) + " m");
    }
    read_if(jn, "dt_s", p.dt);
    read_if(jn, "t_end_s", p.t_end);
    read_if(jn, "cfl", p.cfl);
    read_if(jn, "eta1", p.eta1);
    read_if(jn, "eta2", p.eta2);
    read_if(jn, "eps_reg", p.eps_reg);
    read_if(jn, "alpha_1_s", p.alpha);
    read_if(jn, "beta_s", p.beta);
    read_if(jn, "gravity_m_s2", p.gravity);
    read_if(jn, "gravity_on", p.gravity_on);
    if (jn.contains("plane")) p.plane = plane_from(jn["plane"].get<std::string>());
    if (jn.contains("equivalent_strain"))
        p.eq_strain = eq_strain_from(jn["equivalent_strain"].get<std::string>());
    if (jn.contains("bond_length"))
        p.bond_length = bond_length_from(jn["bond_length"].get<std::string>());

    if (doc.contains("excitation")) {
        const json& je = doc["excitation"];
        if (je.contains("kind"))
            scene.excitation.kind = signal_from(je["kind"].get<std::string>());
        read_if(je, "amplitude_g", scene.excitation.amplitude_g);
        read_if(je, "period_s", scene.excitation.period_s);
        if (je.contains("direction"))
            scene.excitation.direction = vec2_from_json(je["direction"], "excitation direction");
        read_if(je, "file", scene.excitation.accelerogram_file);
    }

    if (doc.contains("boundary")) {
        const json& jb = doc["boundary"];
        read_if(jb, "enabled", scene.boundary.enabled);
        read_if(jb, "band_m", scene.boundary.band_m);
        read_if(jb, "include_sides", scene.boundary.include_sides);
        read_if(jb, "region", scene.boundary.region_label);
    } else {
        scene.boundary.band_m = 2.0 * p.dp;
    }

    if (doc.contains("preload")) {
        const json& jp = doc["preload"];
        read_if(jp, "enabled", scene.preload.enabled);
        read_if(jp, "relax_alpha_1_s", scene.preload.relax_alpha);
        read_if(jp, "ke_tol_J_kg", scene.preload.ke_tol);
        read_if(jp, "max_steps", scene.preload.max_steps);
        read_if(jp, "check_every", scene.preload.check_every);
    }

    if (doc.contains("initial_condition")) {
        const json& ji = doc["initial_condition"];
        read_if(ji, "kind", scene.init.kind);
        read_if(ji, "amplitude", scene.init.amplitude);
        if (ji.contains("center_m"))
            scene.init.center = vec2_from_json(ji["center_m"], "initial_condition center");
        read_if(ji, "width_m", scene.init.width_m);
        if (ji.contains("direction"))
            scene.init.direction = vec2_from_json(ji["direction"], "initial_condition direction");
    }

    if (doc.contains("output")) {
        const json& jo = doc["output"];
        read_if(jo, "directory", scene.output.directory);
        read_if(jo, "snapshot_interval_s", scene.output.snapshot_interval_s);
        read_if(jo, "log_every_steps", scene.output.log_every_steps);
        read_if(jo, "vtk", scene.output.vtk);
        read_if(jo, "dump_bonds", scene.output.dump_bonds);
    }
    return scene;
}

Scene load_scene(const std::string& path, std::vector<std::string>* notices) {
    std::ifstream in(path);
    if (!in) throw IoError("scene not found: '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("scene parse error in '" + path + "': " + e.what());
    }
    Scene scene;
    try {
        scene = scene_from_json(doc, notices);
    } catch (const json::exception& e) {
        throw ConfigError("scene field error in '" + path + "': " + e.what());
    }
    scene.base_dir = std::filesystem::path(path).parent_path().string();
    const std::vector<std::string> warns = validate_scene(scene);
    if (notices) notices->insert(notices->end(), warns.begin(), warns.end());
    return scene;
}

void save_scene(const Scene& scene, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write scene '" + path + "'");
    out << scene_to_json(scene).dump(2) << "\n";
    if (!out) throw IoError("write failed for scene '" + path + "'");
}

void apply_override(json& doc, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must be key=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    // Parse the value as a JSON scalar when possible, else keep the string.
    json parsed;
    try {
        parsed = json::parse(value);
        if (parsed.is_object() || parsed.is_array()) parsed = json(value);
    } catch (const json::parse_error&) {
        parsed = json(value);
    }

    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        if (dot == std::string::npos) {
            parts.push_back(path.substr(start));
            break;
        }
        parts.push_back(path.substr(start, dot - start));
        start = dot + 1;
    }

    if (parts.size() == 1) {
        // Bare key: search the top level, then each section, for an existing
        // match so `--set dt_s=...` works without naming the section.
        const std::string& key = parts[0];
        if (doc.contains(key) && !doc[key].is_object() && !doc[key].is_array()) {
            doc[key] = parsed;
            return;
        }
        static const char* kSections[] = {"numerics", "excitation", "boundary",
                                          "preload", "initial_condition", "output"};
        for (const char* section : kSections) {
            if (doc.contains(section) && doc[section].is_object() &&
                doc[section].contains(key)) {
                doc[section][key] = parsed;
                return;
            }
        }
        throw ConfigError("override key '" + key + "' not found in the scene");
    }

    json* node = &doc;
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
        if (!node->contains(parts[k]) || !(*node)[parts[k]].is_object())
            throw ConfigError("override path '" + path + "' not found in the scene");
        node = &(*node)[parts[k]];
    }
    if (!node->contains(parts.back()))
        throw ConfigError("override key '" + path + "' not found in the scene");
    (*node)[parts.back()] = parsed;
}

}  // namespace pssph
