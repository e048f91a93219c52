#include "pssph/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "pssph/errors.hpp"

namespace pssph {

namespace {

constexpr char kMagic[8] = {'P', 'S', 'S', 'P', 'H', 'C', 'K', '1'};

template <typename T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void put_vec(std::ofstream& out, const std::vector<T>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
void get(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
}

template <typename T>
void get_vec(std::ifstream& in, std::vector<T>& v) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(T)));
}

}  // namespace

void write_checkpoint(const Solver& solver, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint '" + path + "'");
    const State& st = solver.state();
    const SpringNetwork& net = solver.network();

    out.write(kMagic, sizeof kMagic);
    put(out, static_cast<std::uint64_t>(st.size()));
    put(out, static_cast<std::uint64_t>(net.bond_count()));
    put(out, static_cast<std::int64_t>(st.step));
    put(out, st.time);

    put_vec(out, st.pos);
    put_vec(out, st.vel);
    put_vec(out, st.rho);
    put_vec(out, st.sigma);
    put_vec(out, st.sigma_rate);
    put_vec(out, st.strain);
    put_vec(out, st.energy);
    put_vec(out, st.dmg);
    put_vec(out, solver.accelerations());

    put_vec(out, net.kappa);
    put_vec(out, net.f);
    put_vec(out, net.failed);

    put(out, solver.audit());
    put(out, static_cast<std::int64_t>(solver.failed_bond_count()));

    const std::vector<FailureEvent>& events = solver.failure_events();
    put(out, static_cast<std::uint64_t>(events.size()));
    put_vec(out, events);

    if (!out) throw IoError("write failed for checkpoint '" + path + "'");
}

void read_checkpoint(Solver& solver, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read checkpoint '" + path + "'");

    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw IoError("checkpoint '" + path + "' has an unknown format");

    std::uint64_t n = 0, nb = 0;
    std::int64_t step = 0;
    double time = 0.0;
    get(in, n);
    get(in, nb);
    get(in, step);
    get(in, time);

    State& st = solver.mutable_state();
    SpringNetwork& net = solver.mutable_network();
    if (n != st.size() || nb != net.bond_count())
        throw IoError("checkpoint '" + path + "' does not match this scene (" +
                      std::to_string(n) + " particles, " + std::to_string(nb) + " bonds)");

    get_vec(in, st.pos);
    get_vec(in, st.vel);
    get_vec(in, st.rho);
    get_vec(in, st.sigma);
    get_vec(in, st.sigma_rate);
    get_vec(in, st.strain);
    get_vec(in, st.energy);
    get_vec(in, st.dmg);
    std::vector<Vec2> accel(n);
    get_vec(in, accel);

    get_vec(in, net.kappa);
    get_vec(in, net.f);
    get_vec(in, net.failed);

    EnergyAudit audit;
    get(in, audit);
    std::int64_t failed_bonds = 0;
    get(in, failed_bonds);

    std::uint64_t n_events = 0;
    get(in, n_events);
    std::vector<FailureEvent> events(n_events);
    get_vec(in, events);

    if (!in) throw IoError("checkpoint '" + path + "' is truncated");

    st.step = step;
    st.time = time;
    solver.restore_accelerations(std::move(accel));
    solver.restore_audit(audit);
    solver.restore_events(std::move(events), failed_bonds);
}

}  // namespace pssph
