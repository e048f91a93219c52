#include "pssph/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "pssph/errors.hpp"

namespace pssph {

double artificial_viscosity(Vec2 dv, Vec2 dx, double h, const ArtificialViscosity& visc,
                            double cbar, double rhobar) {
    const double vr = dot(dv, dx);
    if (vr >= 0.0) return 0.0;  // only approaching pairs dissipate
    const double mu = h * vr / (norm2(dx) + visc.eps_reg * h * h);
    return (-visc.eta1 * cbar * mu + visc.eta2 * mu * mu) / rhobar;
}

Solver::Solver(ParticleSet particles, std::vector<Material> materials, SolverConfig cfg)
    : particles_(std::move(particles)),
      materials_(std::move(materials)),
      cfg_(cfg),
      kernel_(cfg.h),
      search_(2.0 * cfg.h) {
    const std::size_t n = particles_.size();
    if (n == 0) throw ConfigError("solver: empty particle set");
    if (materials_.empty()) throw ConfigError("solver: no materials");
    if (!(cfg_.dt > 0.0)) throw ConfigError("solver: dt must be positive");

    st_.pos = particles_.pos;
    st_.vel = particles_.vel;
    st_.rho = particles_.rho;
    st_.sigma.assign(n, Sym2{});
    st_.sigma_rate.assign(n, Sym2{});
    st_.strain.assign(n, Sym2{});
    st_.energy.assign(n, 0.0);
    st_.dmg.assign(n, DamageState{});
    pos0_ = st_.pos;

    accel_.assign(n, Vec2{0.0, 0.0});
    sigma_eff_.assign(n, Sym2{});
    drho_.assign(n, 0.0);
    denergy_.assign(n, 0.0);
    strain_rate_.assign(n, Sym2{});
    spin_.assign(n, 0.0);
    w_boundary_.assign(n, 0.0);
    w_visc_.assign(n, 0.0);
    w_damp_kv_.assign(n, 0.0);
    w_damp_mass_.assign(n, 0.0);
    w_damage_.assign(n, 0.0);

    elastic_.reserve(materials_.size());
    sound_.reserve(materials_.size());
    for (const Material& m : materials_) {
        elastic_.push_back(Elastic2D::from(m, cfg_.plane));
        sound_.push_back(m.sound_speed());
        c_max_ = std::max(c_max_, m.sound_speed());
    }
    for (int mid : particles_.material) {
        if (mid < 0 || static_cast<std::size_t>(mid) >= materials_.size())
            throw ConfigError("solver: particle references missing material");
    }

    nbr_ = search_.build(st_.pos);
    net_ = init_network(particles_, nbr_, materials_);
    recompute(0.0, false);
}

void Solver::set_excitation(const ExcitationSignal* signal) { excitation_ = signal; }

Vec2 Solver::boundary_velocity(double t) const {
    return excitation_ ? excitation_->velocity(t) : Vec2{0.0, 0.0};
}

Vec2 Solver::boundary_displacement(double t) const {
    return excitation_ ? excitation_->displacement(t) : Vec2{0.0, 0.0};
}

double Solver::cfl_limit() const {
    double vmax = 0.0;
    for (const Vec2& v : st_.vel) vmax = std::max(vmax, norm(v));
    return cfg_.cfl * cfg_.h / (c_max_ + vmax);
}

double Solver::kinetic_energy() const {
    double ke = 0.0;
    for (std::size_t i = 0; i < st_.size(); ++i) {
        if (particles_.boundary[i]) continue;
        ke += 0.5 * particles_.mass[i] * norm2(st_.vel[i]);
    }
    return ke;
}

double Solver::kinetic_energy_per_mass() const {
    double mass = 0.0;
    for (std::size_t i = 0; i < st_.size(); ++i) {
        if (!particles_.boundary[i]) mass += particles_.mass[i];
    }
    return mass > 0.0 ? kinetic_energy() / mass : 0.0;
}

double Solver::strain_energy() const {
    double es = 0.0;
    for (std::size_t i = 0; i < st_.size(); ++i) {
        es += 0.5 * (1.0 - st_.dmg[i].D) * ddot(st_.sigma[i], st_.strain[i]) *
              particles_.volume[i];
    }
    return es;
}

double Solver::max_damage() const {
    double d = 0.0;
    for (const DamageState& s : st_.dmg) d = std::max(d, s.D);
    return d;
}

template <bool kParallel>
void Solver::run_phases(bool integrate) {
    const long long n = static_cast<long long>(st_.size());
    const double dt = cfg_.dt;
    const double support = 2.0 * cfg_.h;
    const double support2 = support * support;
    std::atomic<long long> bad{-1};

    // Phase K: velocity gradient (bond-weighted) and continuity rhs.
#pragma omp parallel for schedule(static) if (kParallel)
    for (long long i = 0; i < n; ++i) {
        double l00 = 0.0, l01 = 0.0, l10 = 0.0, l11 = 0.0;
        double dr = 0.0;
        const Vec2 xi = st_.pos[i];
        const Vec2 vi = st_.vel[i];
        const std::uint32_t lo = net_.adj_offsets[i];
        const std::uint32_t hi = net_.adj_offsets[i + 1];
        for (std::uint32_t k = lo; k < hi; ++k) {
            const std::uint32_t j = net_.adj_neighbor[k];
            const double f = net_.f[net_.adj_bond[k]];
            if (f <= 0.0) continue;
            const Vec2 dx = xi - st_.pos[j];
            if (norm2(dx) >= support2) continue;  // stretched beyond support
            const Vec2 gw = kernel_.gradient(dx);
            const Vec2 dv = st_.vel[j] - vi;
            const double w = f * particles_.mass[j] / st_.rho[j];
            l00 += w * dv.x * gw.x;
            l01 += w * dv.x * gw.y;
            l10 += w * dv.y * gw.x;
            l11 += w * dv.y * gw.y;
            dr += f * particles_.mass[j] * (-(dv.x * gw.x + dv.y * gw.y));
        }
        strain_rate_[i] = Sym2{l00, l11, 0.5 * (l01 + l10)};
        spin_[i] = 0.5 * (l01 - l10);
        drho_[i] = dr;
    }

    // Phase C: constitutive update, density integration, damage bookkeeping.
    // Without `integrate` (construction/refresh) only the stress rate and
    // effective stress are evaluated; state stays untouched.
#pragma omp parallel for schedule(static) if (kParallel)
    for (long long i = 0; i < n; ++i) {
        const int mid = particles_.material[i];
        const Material& mat = materials_[mid];
        if (integrate) {
            const double d_before = st_.dmg[i].D;
            const StressUpdateResult res =
                stress_update(st_.sigma[i], st_.strain[i], st_.dmg[i], strain_rate_[i],
                              spin_[i], dt, elastic_[mid], mat, cfg_.eq_strain, cfg_.plane,
                              freeze_damage_);
            st_.sigma_rate[i] = res.rate;
            st_.rho[i] += dt * drho_[i];
            const double intact = 1.0 - st_.dmg[i].D;
            sigma_eff_[i] = intact * (st_.sigma[i] + cfg_.beta * st_.sigma_rate[i]);
            w_damp_kv_[i] = particles_.volume[i] * cfg_.beta * intact *
                            ddot(st_.sigma_rate[i], strain_rate_[i]);
            w_damage_[i] = (st_.dmg[i].D - d_before) * 0.5 *
                           ddot(st_.sigma[i], st_.strain[i]) * particles_.volume[i];
        } else {
            const Sym2 rate =
                elastic_[mid].apply(strain_rate_[i]) + spin_rotation_rate(st_.sigma[i], spin_[i]);
            st_.sigma_rate[i] = rate;
            const double intact = 1.0 - st_.dmg[i].D;
            sigma_eff_[i] = intact * (st_.sigma[i] + cfg_.beta * rate);
            w_damp_kv_[i] = 0.0;
            w_damage_[i] = 0.0;
        }
    }

    // Phase M: momentum and energy pair sums, damping, work bookkeeping.
#pragma omp parallel for schedule(static) if (kParallel)
    for (long long i = 0; i < n; ++i) {
        const bool bnd_i = particles_.boundary[i] != 0;
        const Vec2 xi = st_.pos[i];
        const Vec2 vi = st_.vel[i];
        const double inv2i = 1.0 / (st_.rho[i] * st_.rho[i]);
        const double ci = sound_[particles_.material[i]];
        Vec2 acc{0.0, 0.0};
        double de = 0.0;
        double wb = 0.0;
        double wv = 0.0;

        // Elastic interaction over surviving bonds.
        const std::uint32_t lo = net_.adj_offsets[i];
        const std::uint32_t hi = net_.adj_offsets[i + 1];
        for (std::uint32_t k = lo; k < hi; ++k) {
            const std::uint32_t j = net_.adj_neighbor[k];
            const double f = net_.f[net_.adj_bond[k]];
            if (f <= 0.0) continue;
            const Vec2 dx = xi - st_.pos[j];
            if (norm2(dx) >= support2) continue;
            const Vec2 gw = kernel_.gradient(dx);
            const double inv2j = 1.0 / (st_.rho[j] * st_.rho[j]);
            const Sym2 s = inv2i * sigma_eff_[i] + inv2j * sigma_eff_[j];
            const Vec2 term = particles_.mass[j] * f * mul(s, gw);
            acc += term;
            const Vec2 dv = vi - st_.vel[j];
            de += -0.5 * dot(dv, term);
            if (!bnd_i && particles_.boundary[j])
                wb += particles_.mass[i] * dot(term, vi);
        }

        // Artificial viscosity over all current neighbors (bond-independent:
        // severed pairs still repel on approach — minimal contact).
        for (const std::uint32_t* pj = nbr_.begin_of(i); pj != nbr_.end_of(i); ++pj) {
            const std::uint32_t j = *pj;
            const Vec2 dx = xi - st_.pos[j];
            const Vec2 dv = vi - st_.vel[j];
            const double cbar = 0.5 * (ci + sound_[particles_.material[j]]);
            const double rhobar = 0.5 * (st_.rho[i] + st_.rho[j]);
            const double pi_ij = artificial_viscosity(dv, dx, cfg_.h, cfg_.visc, cbar, rhobar);
            if (pi_ij == 0.0) continue;
            const Vec2 gw = kernel_.gradient(dx);
            const Vec2 term = (-particles_.mass[j] * pi_ij) * gw;
            acc += term;
            de += 0.5 * particles_.mass[j] * pi_ij * dot(dv, gw);
            const bool bnd_j = particles_.boundary[j] != 0;
            if (!bnd_i && !bnd_j)
                wv += 0.5 * particles_.mass[i] * particles_.mass[j] * pi_ij * dot(dv, gw);
            else if (!bnd_i && bnd_j)
                wb += particles_.mass[i] * dot(term, vi);
        }

        denergy_[i] = de;
        w_visc_[i] = wv;
        w_boundary_[i] = wb;
        if (bnd_i) {
            accel_[i] = Vec2{0.0, 0.0};
            w_damp_mass_[i] = 0.0;
            continue;
        }
        if (cfg_.gravity_on) acc += cfg_.gravity;
        acc += -cfg_.alpha * vi;
        w_damp_mass_[i] = particles_.mass[i] * cfg_.alpha * norm2(vi);
        if (!std::isfinite(acc.x) || !std::isfinite(acc.y)) {
            long long expect = -1;
            bad.compare_exchange_strong(expect, i);
            acc = Vec2{0.0, 0.0};
        }
        accel_[i] = acc;
    }

    if (bad.load() >= 0)
        throw NumericalError("solver: non-finite acceleration", st_.step, bad.load());
}

void Solver::recompute(double t_new, bool integrate) {
    nbr_ = search_.build(st_.pos);
    if (integrate && !freeze_damage_) {
        update_bonds(net_, st_.pos, materials_, cfg_.bond_length, st_.step);
        if (!net_.newly_failed.empty()) {
            failed_bonds_ += static_cast<long>(net_.newly_failed.size());
            for (const std::uint32_t b : net_.newly_failed) {
                const std::uint32_t i = net_.bond_i[b];
                const std::uint32_t j = net_.bond_j[b];
                events_.push_back(FailureEvent{st_.step, t_new, b, i, j,
                                               0.5 * (st_.pos[i] + st_.pos[j])});
            }
        }
    } else {
        net_.newly_failed.clear();
    }
    if (cfg_.lane == Lane::parallel)
        run_phases<true>(integrate);
    else
        run_phases<false>(integrate);
}

void Solver::refresh_forces() { recompute(st_.time, false); }

void Solver::step() {
    const double dt = cfg_.dt;
    const double limit = cfl_limit();
    if (dt > limit)
        throw ConfigError("solver: dt " + std::to_string(dt) + " s exceeds CFL limit " +
                          std::to_string(limit) + " s at step " + std::to_string(st_.step));

    const double t_old = st_.time;
    const double t_new = static_cast<double>(st_.step + 1) * dt;
    const std::size_t n = st_.size();

    // First half-kick; kinematic particles take the step-average velocity so
    // the drift lands exactly on the prescribed displacement.
    const Vec2 u_old = boundary_displacement(t_old);
    const Vec2 u_new = boundary_displacement(t_new);
    const Vec2 v_avg = (1.0 / dt) * (u_new - u_old);
    for (std::size_t i = 0; i < n; ++i) {
        if (particles_.boundary[i])
            st_.vel[i] = v_avg;
        else
            st_.vel[i] += 0.5 * dt * accel_[i];
    }

    // Drift; prescribed particles are pinned to the closed-form motion.
    for (std::size_t i = 0; i < n; ++i) {
        if (particles_.boundary[i])
            st_.pos[i] = pos0_[i] + u_new;
        else
            st_.pos[i] += dt * st_.vel[i];
    }

    // Gravity work through the drift displacement (velocities here are the
    // half-step values the positions actually moved with).
    if (cfg_.gravity_on) {
        double wg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (particles_.boundary[i]) continue;
            wg += particles_.mass[i] * dot(cfg_.gravity, st_.vel[i]);
        }
        audit_.work_gravity += dt * wg;
    }

    recompute(t_new, true);

    // Second half-kick; kinematic particles land on the exact signal velocity.
    const Vec2 v_new = boundary_velocity(t_new);
    for (std::size_t i = 0; i < n; ++i) {
        if (particles_.boundary[i])
            st_.vel[i] = v_new;
        else
            st_.vel[i] += 0.5 * dt * accel_[i];
    }

    audit_step();
    ++st_.step;
    st_.time = static_cast<double>(st_.step) * dt;
}

void Solver::audit_step() {
    const double dt = cfg_.dt;
    double wb = 0.0, wv = 0.0, wkv = 0.0, wdm = 0.0, wdmg = 0.0;
    for (std::size_t i = 0; i < st_.size(); ++i) {
        wb += w_boundary_[i];
        wv += w_visc_[i];
        wkv += w_damp_kv_[i];
        wdm += w_damp_mass_[i];
        wdmg += w_damage_[i];
        st_.energy[i] += dt * denergy_[i];
    }
    audit_.work_boundary += dt * wb;
    audit_.visc_dissipated += dt * wv;
    audit_.damp_kv += dt * wkv;
    audit_.damp_mass += dt * wdm;
    audit_.damage_dissipated += wdmg;
}

long Solver::gravity_preload(double relax_alpha, double ke_tol, long max_steps,
                             long check_every) {
    preload_trace_.clear();
    if (!cfg_.gravity_on || norm2(cfg_.gravity) == 0.0) return 0;

    const double alpha_saved = cfg_.alpha;
    const ExcitationSignal* excitation_saved = excitation_;
    const bool freeze_saved = freeze_damage_;
    cfg_.alpha = relax_alpha;
    excitation_ = nullptr;
    freeze_damage_ = true;

    bool converged = false;
    long steps = 0;
    while (steps < max_steps) {
        step();
        ++steps;
        if (steps % check_every == 0) {
            const double ke = kinetic_energy_per_mass();
            preload_trace_.push_back(ke);
            if (ke < ke_tol) {
                converged = true;
                break;
            }
        }
    }

    cfg_.alpha = alpha_saved;
    excitation_ = excitation_saved;
    freeze_damage_ = freeze_saved;

    if (!converged)
        throw NumericalError("gravity preload did not converge within " +
                                 std::to_string(max_steps) + " steps",
                             steps, -1);

    // Settled: zero velocities, restart the clock, keep the stress field.
    for (std::size_t i = 0; i < st_.size(); ++i) st_.vel[i] = Vec2{0.0, 0.0};
    st_.step = 0;
    st_.time = 0.0;
    audit_ = EnergyAudit{};
    events_.clear();
    refresh_forces();
    return steps;
}

}  // namespace pssph
