#pragma once

#include <cstdint>
#include <vector>

#include "pssph/constitutive.hpp"
#include "pssph/damage.hpp"
#include "pssph/excitation.hpp"
#include "pssph/kernel.hpp"
#include "pssph/lattice.hpp"
#include "pssph/material.hpp"
#include "pssph/math2d.hpp"
#include "pssph/neighbors.hpp"
#include "pssph/springs.hpp"

namespace pssph {

/// Monaghan pair viscosity parameters.
struct ArtificialViscosity {
    double eta1 = 1.0;     ///< linear (bulk) coefficient
    double eta2 = 2.0;     ///< quadratic (von Neumann) coefficient
    double eps_reg = 0.01; ///< denominator regularizer
};

/// Scalar pair viscosity: mu = h*(v.x)/(|x|^2 + eps*h^2) when the pair
/// approaches (v.x < 0), else zero; pi = (-eta1*cbar*mu + eta2*mu^2)/rhobar.
double artificial_viscosity(Vec2 dv, Vec2 dx, double h, const ArtificialViscosity& visc,
                            double cbar, double rhobar);

/// Evolving per-particle fields. Undamaged stress is integrated in rate form;
/// the damage-degraded effective stress used in the momentum sum is derived
/// from it each step.
struct State {
    std::vector<Vec2> pos;
    std::vector<Vec2> vel;
    std::vector<double> rho;
    std::vector<Sym2> sigma;       ///< undamaged Cauchy stress (tension +)
    std::vector<Sym2> sigma_rate;  ///< last d(sigma)/dt
    std::vector<Sym2> strain;      ///< accumulated corotated strain
    std::vector<double> energy;    ///< specific internal energy (diagnostic)
    std::vector<DamageState> dmg;
    long step = 0;
    double time = 0.0;

    std::size_t size() const { return pos.size(); }
};

/// Which driver executes the per-particle phases. Both lanes evaluate the
/// identical per-particle body in the identical neighbor order, so results
/// are bit-identical; `parallel` distributes particles across OpenMP threads.
enum class Lane { serial, parallel };

struct SolverConfig {
    double h = 0.45;
    double dt = 5e-6;
    double cfl = 0.3;
    ArtificialViscosity visc;
    double alpha = 1.616;    ///< mass-proportional damping (1/s)
    double beta = 0.0008;    ///< stiffness-proportional damping (s)
    Vec2 gravity{0.0, -9.81};
    bool gravity_on = true;
    PlaneKind plane = PlaneKind::stress;
    EquivalentStrain eq_strain = EquivalentStrain::principal;
    BondLength bond_length = BondLength::rest;
    Lane lane = Lane::parallel;
};

/// Energy ledger accumulated over the transient (reset after preload). All
/// entries are in joules (per unit thickness).
struct EnergyAudit {
    double work_gravity = 0.0;    ///< gravity work on free particles
    double work_boundary = 0.0;   ///< work by kinematic particles on free ones
    double visc_dissipated = 0.0; ///< artificial-viscosity loss, free-free pairs
    double damp_mass = 0.0;       ///< mass-proportional Rayleigh loss
    double damp_kv = 0.0;         ///< viscous-stress (stiffness) Rayleigh loss
    double damage_dissipated = 0.0;

    double external_work() const { return work_gravity + work_boundary; }
    double dissipated() const {
        return visc_dissipated + damp_mass + damp_kv + damage_dissipated;
    }
};

/// A bond severed at a particular step; midpoint taken at failure time.
struct FailureEvent {
    long step;
    double time;
    std::uint32_t bond;
    std::uint32_t i, j;
    Vec2 midpoint;
};

/// Explicit kick-drift-kick SPH solver over a fixed particle set and spring
/// network. Construction computes the initial force evaluation; step()
/// advances one dt. All phase loops are gather-pattern (each particle writes
/// only itself, reads neighbors in ascending index order) so trajectories are
/// bit-identical across lanes and thread counts.
class Solver {
  public:
    Solver(ParticleSet particles, std::vector<Material> materials, SolverConfig cfg);

    /// Prescribes base motion for flagged particles; nullptr = rest. The
    /// signal must outlive the solver.
    void set_excitation(const ExcitationSignal* signal);

    /// Suspends damage/bond evolution (gravity preload).
    void freeze_damage(bool frozen) { freeze_damage_ = frozen; }

    void step();

    /// Damped static settling under gravity until kinetic energy per unit
    /// mass drops below `ke_tol`; damage frozen throughout; velocities zeroed
    /// and clocks reset on success. Returns relaxation steps taken.
    long gravity_preload(double relax_alpha, double ke_tol, long max_steps,
                         long check_every = 100);

    double cfl_limit() const;
    double kinetic_energy() const;          ///< J, free particles
    double kinetic_energy_per_mass() const; ///< J/kg, free particles
    double strain_energy() const;           ///< J, recoverable
    double max_damage() const;
    long failed_bond_count() const { return failed_bonds_; }

    const State& state() const { return st_; }
    State& mutable_state() { return st_; }
    const ParticleSet& particles() const { return particles_; }
    const SpringNetwork& network() const { return net_; }
    SpringNetwork& mutable_network() { return net_; }
    const std::vector<Material>& materials() const { return materials_; }
    const SolverConfig& config() const { return cfg_; }
    const EnergyAudit& audit() const { return audit_; }
    const std::vector<FailureEvent>& failure_events() const { return events_; }
    const std::vector<double>& preload_ke_trace() const { return preload_trace_; }
    const NeighborList& current_neighbors() const { return nbr_; }

    /// Recomputes forces from the current state without integrating anything
    /// (used after external edits such as test setups).
    void refresh_forces();

    /// Last computed accelerations (free particles; zero on boundary).
    const std::vector<Vec2>& accelerations() const { return accel_; }

    // Checkpoint restore hooks: overwrite internals captured by a checkpoint.
    void restore_accelerations(std::vector<Vec2> a) { accel_ = std::move(a); }
    void restore_audit(const EnergyAudit& audit) { audit_ = audit; }
    void restore_events(std::vector<FailureEvent> ev, long failed_bonds) {
        events_ = std::move(ev);
        failed_bonds_ = failed_bonds;
    }

  private:
    /// Rebuilds neighbors and forces. With `integrate` set (inside step) it
    /// also advances bonds, stress, strain, density, and damage; without it
    /// (construction, refresh) state is left untouched.
    void recompute(double t_new, bool integrate);
    template <bool kParallel>
    void run_phases(bool integrate);
    void audit_step();
    Vec2 boundary_velocity(double t) const;
    Vec2 boundary_displacement(double t) const;

    ParticleSet particles_;
    std::vector<Material> materials_;
    std::vector<Elastic2D> elastic_;  ///< per material
    std::vector<double> sound_;       ///< per material
    SolverConfig cfg_;
    State st_;
    SpringNetwork net_;
    NeighborList nbr_;
    CubicSplineKernel kernel_;
    NeighborSearch search_;
    const ExcitationSignal* excitation_ = nullptr;

    std::vector<Vec2> pos0_;         ///< reference positions (boundary anchor)
    std::vector<Vec2> accel_;
    std::vector<Sym2> sigma_eff_;
    std::vector<double> drho_;
    std::vector<double> denergy_;
    std::vector<Sym2> strain_rate_;
    std::vector<double> spin_;

    // per-particle per-step work terms, summed serially into audit_
    std::vector<double> w_boundary_;
    std::vector<double> w_visc_;
    std::vector<double> w_damp_kv_;
    std::vector<double> w_damp_mass_;
    std::vector<double> w_damage_;

    EnergyAudit audit_;
    std::vector<FailureEvent> events_;
    std::vector<double> preload_trace_;
    long failed_bonds_ = 0;
    bool freeze_damage_ = false;
    double c_max_ = 0.0;
};

}  // namespace pssph
