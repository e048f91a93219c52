#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "pssph/dynamics.hpp"
#include "pssph/springs.hpp"

namespace pssph {

/// Per-particle table read back from a snapshot file.
struct SnapshotData {
    double time = 0.0;
    long step = 0;
    std::vector<double> x, y, vx, vy, rho;
    std::vector<double> sxx, syy, sxy;          ///< effective stress (Pa)
    std::vector<double> sigma_max, sigma_min;   ///< principal stresses (Pa)
    std::vector<double> damage, conn_damage;
    std::vector<std::string> region;
    std::vector<int> boundary;

    std::size_t size() const { return x.size(); }
};

/// Comma-separated particle table, one line per particle, every float at
/// full round-trip precision (17 significant digits).
void write_snapshot_csv(const Solver& solver, const std::vector<std::string>& region_labels,
                        const std::string& path);

SnapshotData read_snapshot_csv(const std::string& path);

/// Legacy-VTK (ASCII) point cloud carrying the same fields as point data.
void write_snapshot_vtk(const Solver& solver, const std::string& path);

/// Failed bonds (midpoints at current positions), one line per severed bond.
void write_failed_bonds_csv(const Solver& solver, const std::string& path);

/// All bonds with their interaction factors (optional heavyweight dump).
void write_bonds_csv(const Solver& solver, const std::string& path);

/// Bond-failure events accumulated over the run.
void write_failure_events_csv(const std::vector<FailureEvent>& events,
                              const std::string& path);

/// Crack summary extracted from the spring network.
struct CrackProfile {
    std::vector<Vec2> failed_midpoints;
    std::vector<std::uint32_t> over_threshold;  ///< particle indices
    long failed_count = 0;
    double base_extent_m = 0.0;  ///< x-extent of failures near the interface
    bool has_neck_cluster = false;
    double neck_elevation_m = std::numeric_limits<double>::quiet_NaN();
};

/// `threshold` selects particles by connectivity damage; base failures are
/// midpoints within 2*dp of `interface_y`; the neck metric is the mean
/// elevation of the largest single-linkage cluster (radius 2*dp) above 60%
/// of `dam_height` over the interface.
CrackProfile extract_cracks(const std::vector<Vec2>& positions, const SpringNetwork& network,
                            double threshold, double interface_y, double dam_height,
                            double dp);

/// Same extraction from failed-bond midpoints alone (file-based postprocess).
CrackProfile extract_cracks_from_midpoints(const std::vector<Vec2>& midpoints,
                                           double interface_y, double dam_height, double dp);

/// Comma-separated run log: energies, damage, probe displacements. Probes
/// snap to the nearest particle (error if farther than 2*dp at start).
class TimeSeriesLog {
  public:
    TimeSeriesLog(const std::string& path, const std::vector<Vec2>& probes,
                  const Solver& solver, double dp);

    void record(const Solver& solver);

  private:
    std::ofstream out_;
    std::vector<std::uint32_t> probe_ids_;
    std::vector<Vec2> probe_start_;
};

}  // namespace pssph
