#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pssph/dynamics.hpp"
#include "pssph/excitation.hpp"
#include "pssph/scene.hpp"

namespace pssph {

struct RunOptions {
    std::string output_dir;            ///< overrides the scene's when nonempty
    int threads = 0;                   ///< 0 = runtime default
    double checkpoint_interval_s = 0;  ///< 0 = no checkpoints
    std::string resume_from;           ///< checkpoint path; skips preload
    bool yes = false;                  ///< confirm long runs
    Lane lane = Lane::parallel;
    double progress_every_s = 5.0;     ///< wall-clock progress cadence; <=0 off
    std::string scene_path;            ///< recorded in run metadata
};

struct RunResult {
    long steps = 0;
    long preload_steps = 0;
    double wall_s = 0.0;
    std::string output_dir;
    long failed_bonds = 0;
};

/// Step count the transient will take; long runs need RunOptions::yes.
long planned_steps(const Scene& scene);
constexpr long kConfirmStepThreshold = 500000;

/// Builds the solver for a scene: particles, materials, excitation (owned by
/// the returned holder), preload NOT yet run.
struct SimulationSetup {
    std::unique_ptr<Solver> solver;
    std::unique_ptr<ExcitationSignal> signal;  ///< null when excitation is none
    Scene scene;
};
SimulationSetup build_simulation(const Scene& scene, Lane lane);

/// Full run: optional preload, transient with snapshots, time-series log,
/// failure events, crack profile, checkpoints, run metadata. Progress lines
/// go to `progress` (pass std::cerr from the CLI).
RunResult run_simulation(const Scene& scene, const RunOptions& options,
                         std::ostream& progress);

}  // namespace pssph
