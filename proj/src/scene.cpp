#include "pssph/scene.hpp"

#include <algorithm>
#include <cmath>

#include "pssph/errors.hpp"

namespace pssph {

int Scene::material_index(const std::string& mat_name) const {
    for (std::size_t k = 0; k < materials.size(); ++k) {
        if (materials[k].name == mat_name) return static_cast<int>(k);
    }
    return -1;
}

int Scene::region_index(const std::string& label) const {
    for (std::size_t k = 0; k < regions.size(); ++k) {
        if (regions[k].label == label) return static_cast<int>(k);
    }
    return -1;
}

double scene_cfl_limit(const Scene& scene) {
    double c_max = 0.0;
    for (const MaterialEntry& m : scene.materials) c_max = std::max(c_max, m.mat.sound_speed());
    return scene.num.cfl * scene.num.h / c_max;
}

std::vector<std::string> validate_scene(const Scene& scene) {
    std::vector<std::string> notices;
    if (scene.materials.empty()) throw ConfigError("scene: no materials defined");
    if (scene.regions.empty()) throw ConfigError("scene: no regions defined");

    for (const MaterialEntry& entry : scene.materials) {
        const std::vector<std::string> warns = validate_material(entry.mat, entry.name);
        notices.insert(notices.end(), warns.begin(), warns.end());
    }
    for (const RegionPolygon& region : scene.regions) {
        if (region.polygon.vertices.size() < 3)
            throw ConfigError("scene: region '" + region.label + "' needs >= 3 vertices");
        if (!region.polygon.is_simple())
            throw ConfigError("scene: region '" + region.label + "' polygon self-intersects");
        if (region.material_id < 0 ||
            static_cast<std::size_t>(region.material_id) >= scene.materials.size())
            throw ConfigError("scene: region '" + region.label +
                              "' references a missing material");
    }

    const NumericalParams& p = scene.num;
    if (!(p.dp > 0.0)) throw ConfigError("scene: dp_m must be positive");
    if (!(p.h > 0.0)) throw ConfigError("scene: h_m must be positive");
    const double ratio = p.h / p.dp;
    if (ratio < 0.8 || ratio > 2.0)
        throw ConfigError("scene: h/dp = " + std::to_string(ratio) +
                          " outside the sane range [0.8, 2.0]");
    if (!(p.dt > 0.0)) throw ConfigError("scene: dt_s must be positive");
    if (!(p.t_end >= 0.0)) throw ConfigError("scene: t_end_s must be non-negative");
    if (!(p.cfl > 0.0 && p.cfl <= 1.0)) throw ConfigError("scene: cfl must be in (0, 1]");
    if (p.eta1 < 0.0 || p.eta2 < 0.0)
        throw ConfigError("scene: viscosity coefficients must be non-negative");
    if (p.alpha < 0.0 || p.beta < 0.0)
        throw ConfigError("scene: damping parameters must be non-negative");

    const double limit = scene_cfl_limit(scene);
    if (p.dt > limit)
        throw ConfigError("scene: dt_s = " + std::to_string(p.dt) +
                          " exceeds the cfl_limit " + std::to_string(limit) + " s");

    if (scene.excitation.kind == SignalKind::sinusoid) {
        if (!(scene.excitation.period_s > 0.0))
            throw ConfigError("scene: sinusoid period_s must be positive");
        if (norm2(scene.excitation.direction) == 0.0)
            throw ConfigError("scene: excitation direction must be nonzero");
    }
    if (scene.excitation.kind == SignalKind::accelerogram &&
        scene.excitation.accelerogram_file.empty())
        throw ConfigError("scene: accelerogram excitation needs a file");

    if (scene.boundary.enabled) {
        if (scene.boundary.band_m < p.dp)
            throw ConfigError("scene: boundary band_m must be at least one particle spacing");
        if (!scene.boundary.region_label.empty() &&
            scene.region_index(scene.boundary.region_label) < 0)
            notices.push_back("notice: boundary region '" + scene.boundary.region_label +
                              "' not present; falling back to the whole-domain bottom edge");
    }

    if (scene.init.kind != "none" && scene.init.kind != "velocity_pulse" &&
        scene.init.kind != "stretch")
        throw ConfigError("scene: unknown initial_condition kind '" + scene.init.kind + "'");

    if (!(scene.output.snapshot_interval_s > 0.0))
        throw ConfigError("scene: snapshot_interval_s must be positive");
    if (scene.output.log_every_steps <= 0)
        throw ConfigError("scene: log_every_steps must be positive");
    return notices;
}

ParticleSet build_particles(const Scene& scene) {
    ParticleSet all;
    for (std::size_t r = 0; r < scene.regions.size(); ++r) {
        const RegionPolygon& region = scene.regions[r];
        ParticleSet part = fill_polygon(region, scene.num.dp,
                                        scene.materials[region.material_id].mat,
                                        static_cast<int>(r));
        all.append(part);
    }

    if (scene.boundary.enabled) {
        const int bnd_region = scene.boundary.region_label.empty()
                                   ? -1
                                   : scene.region_index(scene.boundary.region_label);
        tag_boundary(all, scene.boundary.band_m, scene.num.dp, scene.boundary.include_sides,
                     bnd_region);
    }

    if (scene.init.kind == "velocity_pulse") {
        const double w2 = scene.init.width_m * scene.init.width_m;
        for (std::size_t i = 0; i < all.size(); ++i) {
            const double r2 = norm2(all.pos[i] - scene.init.center);
            all.vel[i] += (scene.init.amplitude * std::exp(-r2 / w2)) * scene.init.direction;
        }
    } else if (scene.init.kind == "stretch") {
        // Uniform strain along the direction, displacements about the center.
        for (std::size_t i = 0; i < all.size(); ++i) {
            const Vec2 rel = all.pos[i] - scene.init.center;
            const double along = dot(rel, scene.init.direction);
            all.pos[i] += (scene.init.amplitude * along) * scene.init.direction;
        }
    }
    return all;
}

SolverConfig solver_config(const Scene& scene) {
    SolverConfig cfg;
    cfg.h = scene.num.h;
    cfg.dt = scene.num.dt;
    cfg.cfl = scene.num.cfl;
    cfg.visc.eta1 = scene.num.eta1;
    cfg.visc.eta2 = scene.num.eta2;
    cfg.visc.eps_reg = scene.num.eps_reg;
    cfg.alpha = scene.num.alpha;
    cfg.beta = scene.num.beta;
    cfg.gravity = Vec2{0.0, -scene.num.gravity};
    cfg.gravity_on = scene.num.gravity_on;
    cfg.plane = scene.num.plane;
    cfg.eq_strain = scene.num.eq_strain;
    cfg.bond_length = scene.num.bond_length;
    return cfg;
}

namespace {

Material concrete_material() {
    return Material{};  // defaults carry the dam concrete constants
}

Material foundation_material() {
    Material rock = Material{};
    // Softer fracture constants so interface bonds fail before dam-interior
    // ones at equal strain; elasticity shared with the dam body.
    rock.f_t = 2.0e6;
    rock.eps0 = rock.f_t / rock.E;
    return rock;
}

Scene koyna_scene(double dp) {
    Scene scene;
    scene.name = dp == 0.5 ? "koyna" : "koyna-coarse";
    scene.materials.push_back(MaterialEntry{"concrete", concrete_material()});
    Material rock = foundation_material();
    rock.h_c = dp;
    Material concrete = scene.materials[0].mat;
    concrete.h_c = dp;
    scene.materials[0].mat = concrete;
    scene.materials.push_back(MaterialEntry{"rock", rock});

    RegionPolygon dam;
    dam.label = "dam";
    dam.material_id = 0;
    dam.polygon.vertices = {Vec2{0.0, 0.0}, Vec2{70.0, 0.0}, Vec2{20.1, 66.4},
                            Vec2{14.8, 103.0}, Vec2{0.0, 103.0}};
    scene.regions.push_back(dam);

    RegionPolygon foundation;
    foundation.label = "foundation";
    foundation.material_id = 1;
    foundation.polygon.vertices = {Vec2{-10.5, -23.5}, Vec2{81.0, -23.5}, Vec2{81.0, 0.0},
                                   Vec2{-10.5, 0.0}};
    scene.regions.push_back(foundation);

    scene.num.dp = dp;
    scene.num.h = 0.9 * dp;
    scene.boundary.band_m = 2.0 * dp;
    scene.boundary.include_sides = true;
    scene.boundary.region_label = "foundation";

    if (dp == 0.5) {
        scene.num.dt = 5e-6;
        scene.num.t_end = 10.0;
        scene.output.snapshot_interval_s = 0.5;
        scene.output.log_every_steps = 2000;
    } else {
        scene.num.dt = 2.5e-5;
        scene.num.t_end = 3.0;
        scene.output.snapshot_interval_s = 0.25;
        scene.output.log_every_steps = 400;
    }

    scene.excitation.kind = SignalKind::sinusoid;
    scene.excitation.amplitude_g = 0.1;
    scene.excitation.period_s = 0.3;
    scene.excitation.direction = Vec2{1.0, 0.0};
    return scene;
}

Scene bar_wave_scene() {
    Scene scene;
    scene.name = "bar-wave";
    Material mat;  // concrete elasticity, zero Poisson for the 1D wave speed
    mat.nu = 0.0;
    mat.h_c = 0.1;
    scene.materials.push_back(MaterialEntry{"bar", mat});

    RegionPolygon bar;
    bar.label = "bar";
    bar.material_id = 0;
    bar.polygon.vertices = {Vec2{0.0, 0.0}, Vec2{20.0, 0.0}, Vec2{20.0, 1.0}, Vec2{0.0, 1.0}};
    scene.regions.push_back(bar);

    scene.num.dp = 0.1;
    scene.num.h = 0.09;
    scene.num.dt = 5e-6;
    scene.num.t_end = 0.004;
    scene.num.alpha = 0.0;
    scene.num.beta = 0.0;
    scene.num.gravity_on = false;

    scene.boundary.enabled = false;  // free bar, no kinematic particles
    scene.preload.enabled = false;
    scene.excitation.kind = SignalKind::none;

    scene.init.kind = "velocity_pulse";
    scene.init.amplitude = 0.1;
    scene.init.center = Vec2{2.0, 0.5};
    scene.init.width_m = 0.5;
    scene.init.direction = Vec2{1.0, 0.0};

    scene.output.snapshot_interval_s = 0.001;
    scene.output.log_every_steps = 50;
    return scene;
}

Scene plate_tension_scene() {
    Scene scene;
    scene.name = "plate-tension";
    Material mat;
    mat.h_c = 0.05;
    scene.materials.push_back(MaterialEntry{"concrete", mat});

    RegionPolygon plate;
    plate.label = "plate";
    plate.material_id = 0;
    plate.polygon.vertices = {Vec2{0.0, 0.0}, Vec2{2.0, 0.0}, Vec2{2.0, 1.0}, Vec2{0.0, 1.0}};
    scene.regions.push_back(plate);

    scene.num.dp = 0.05;
    scene.num.h = 0.045;
    scene.num.dt = 2e-6;
    scene.num.t_end = 0.002;
    scene.num.alpha = 0.0;
    scene.num.beta = 0.0;
    scene.num.gravity_on = false;

    scene.boundary.enabled = false;  // free plate
    scene.preload.enabled = false;
    scene.excitation.kind = SignalKind::none;

    scene.init.kind = "stretch";
    scene.init.amplitude = 2e-4;  // beyond the damage-initiation strain
    scene.init.center = Vec2{1.0, 0.5};
    scene.init.direction = Vec2{1.0, 0.0};

    scene.output.snapshot_interval_s = 0.0005;
    scene.output.log_every_steps = 50;
    return scene;
}

}  // namespace

Scene canonical_scene(const std::string& name) {
    if (name == "koyna") return koyna_scene(0.5);
    if (name == "koyna-coarse") return koyna_scene(2.0);
    if (name == "bar-wave") return bar_wave_scene();
    if (name == "plate-tension") return plate_tension_scene();
    throw ConfigError("unknown canonical scene '" + name +
                      "' (expected koyna, koyna-coarse, bar-wave, plate-tension)");
}

}  // namespace pssph
