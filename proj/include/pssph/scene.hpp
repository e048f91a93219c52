#pragma once

#include <string>
#include <vector>

#include "pssph/constitutive.hpp"
#include "pssph/damage.hpp"
#include "pssph/dynamics.hpp"
#include "pssph/excitation.hpp"
#include "pssph/lattice.hpp"
#include "pssph/material.hpp"
#include "pssph/springs.hpp"

namespace pssph {

struct MaterialEntry {
    std::string name;
    Material mat;
};

struct ExcitationSpec {
    SignalKind kind = SignalKind::none;
    double amplitude_g = 0.0;
    double period_s = 0.3;
    Vec2 direction{1.0, 0.0};
    std::string accelerogram_file;  ///< resolved against the scene file's directory
};

struct BoundarySpec {
    bool enabled = true;  ///< false: no kinematic particles (free fixture)
    double band_m = 1.0;
    bool include_sides = true;
    std::string region_label = "foundation";  ///< absent label -> whole-domain bottom
};

struct PreloadSpec {
    bool enabled = true;
    double relax_alpha = 30.0;     ///< heavy mass damping during settling (1/s)
    double ke_tol = 1e-6;          ///< J/kg convergence threshold
    long max_steps = 2000000;
    long check_every = 100;
};

/// Optional initial perturbation for verification fixtures.
struct InitialConditionSpec {
    std::string kind = "none";  ///< none | velocity_pulse | stretch
    double amplitude = 0.0;     ///< m/s for pulse, strain for stretch
    Vec2 center{0.0, 0.0};
    double width_m = 1.0;       ///< Gaussian width of the pulse
    Vec2 direction{1.0, 0.0};
};

struct OutputSpec {
    std::string directory = "out";
    double snapshot_interval_s = 0.5;
    long log_every_steps = 100;
    bool vtk = true;
    bool dump_bonds = false;
};

struct NumericalParams {
    double dp = 0.5;
    double h = 0.45;
    double dt = 5e-6;
    double t_end = 10.0;
    double cfl = 0.3;
    double eta1 = 1.0;
    double eta2 = 2.0;
    double eps_reg = 0.01;
    double alpha = 1.616;
    double beta = 0.0008;
    double gravity = 9.81;
    bool gravity_on = true;
    PlaneKind plane = PlaneKind::stress;
    EquivalentStrain eq_strain = EquivalentStrain::principal;
    BondLength bond_length = BondLength::rest;
};

struct Scene {
    int schema_version = 1;
    std::string name;
    std::vector<MaterialEntry> materials;
    std::vector<RegionPolygon> regions;  ///< material_id resolved into materials
    NumericalParams num;
    ExcitationSpec excitation;
    BoundarySpec boundary;
    PreloadSpec preload;
    InitialConditionSpec init;
    OutputSpec output;
    std::string base_dir;  ///< directory of the scene file; not serialized

    int material_index(const std::string& name) const;
    int region_index(const std::string& label) const;
};

/// Enforces the scene invariants; throws ConfigError naming the violation.
/// Returns human-readable notices (defaults applied, soft warnings).
std::vector<std::string> validate_scene(const Scene& scene);

/// CFL limit of the scene at rest: cfl * h / max material sound speed.
double scene_cfl_limit(const Scene& scene);

/// Builds one of the shipped configurations: "koyna", "koyna-coarse",
/// "bar-wave", "plate-tension".
Scene canonical_scene(const std::string& name);

/// Lattice-fills all regions, tags boundary particles, applies the initial
/// condition.
ParticleSet build_particles(const Scene& scene);

SolverConfig solver_config(const Scene& scene);

}  // namespace pssph
