#include "pssph/output.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "pssph/errors.hpp"

namespace pssph {

namespace {

// 17 significant digits round-trip any double exactly.
std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Sym2 effective_stress_of(const Solver& solver, std::size_t i) {
    const State& st = solver.state();
    return (1.0 - st.dmg[i].D) * st.sigma[i];
}

}  // namespace

void write_snapshot_csv(const Solver& solver, const std::vector<std::string>& region_labels,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write snapshot '" + path + "'");
    const State& st = solver.state();
    const ParticleSet& particles = solver.particles();
    const std::vector<double> conn = connectivity_damage(solver.network());

    out << "# time_s=" << full(st.time) << " step=" << st.step << "\n";
    out << "id,x_m,y_m,vx_m_s,vy_m_s,rho_kg_m3,sxx_Pa,syy_Pa,sxy_Pa,sigma_max_Pa,"
           "sigma_min_Pa,damage,connectivity_damage,region,boundary\n";
    for (std::size_t i = 0; i < st.size(); ++i) {
        const Sym2 s = effective_stress_of(solver, i);
        const Principal2 p = principal_values(s);
        out << i << ',' << full(st.pos[i].x) << ',' << full(st.pos[i].y) << ','
            << full(st.vel[i].x) << ',' << full(st.vel[i].y) << ',' << full(st.rho[i]) << ','
            << full(s.xx) << ',' << full(s.yy) << ',' << full(s.xy) << ',' << full(p.max)
            << ',' << full(p.min) << ',' << full(st.dmg[i].D) << ',' << full(conn[i]) << ','
            << region_labels[particles.region[i]] << ','
            << static_cast<int>(particles.boundary[i]) << "\n";
    }
    if (!out) throw IoError("write failed for snapshot '" + path + "'");
}

SnapshotData read_snapshot_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read snapshot '" + path + "'");
    SnapshotData data;
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::sscanf(line.c_str(), "# time_s=%lf step=%ld", &data.time, &data.step);
            continue;
        }
        if (!header_done) {  // column header
            header_done = true;
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> fields;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (fields.size() != 15)
            throw IoError("snapshot '" + path + "': malformed row '" + line + "'");
        data.x.push_back(std::stod(fields[1]));
        data.y.push_back(std::stod(fields[2]));
        data.vx.push_back(std::stod(fields[3]));
        data.vy.push_back(std::stod(fields[4]));
        data.rho.push_back(std::stod(fields[5]));
        data.sxx.push_back(std::stod(fields[6]));
        data.syy.push_back(std::stod(fields[7]));
        data.sxy.push_back(std::stod(fields[8]));
        data.sigma_max.push_back(std::stod(fields[9]));
        data.sigma_min.push_back(std::stod(fields[10]));
        data.damage.push_back(std::stod(fields[11]));
        data.conn_damage.push_back(std::stod(fields[12]));
        data.region.push_back(fields[13]);
        data.boundary.push_back(std::stoi(fields[14]));
    }
    return data;
}

void write_snapshot_vtk(const Solver& solver, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write VTK file '" + path + "'");
    const State& st = solver.state();
    const ParticleSet& particles = solver.particles();
    const std::vector<double> conn = connectivity_damage(solver.network());
    const std::size_t n = st.size();

    out << "# vtk DataFile Version 3.0\n";
    out << "particle state t=" << full(st.time) << " step=" << st.step << "\n";
    out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << n << " double\n";
    for (std::size_t i = 0; i < n; ++i)
        out << full(st.pos[i].x) << ' ' << full(st.pos[i].y) << " 0\n";
    out << "CELLS " << n << ' ' << 2 * n << "\n";
    for (std::size_t i = 0; i < n; ++i) out << "1 " << i << "\n";
    out << "CELL_TYPES " << n << "\n";
    for (std::size_t i = 0; i < n; ++i) out << "1\n";  // VTK_VERTEX

    out << "POINT_DATA " << n << "\n";
    out << "VECTORS velocity double\n";
    for (std::size_t i = 0; i < n; ++i)
        out << full(st.vel[i].x) << ' ' << full(st.vel[i].y) << " 0\n";

    const auto scalar = [&](const char* name, auto&& get) {
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (std::size_t i = 0; i < n; ++i) out << full(get(i)) << "\n";
    };
    scalar("density", [&](std::size_t i) { return st.rho[i]; });
    scalar("sigma_xx", [&](std::size_t i) { return effective_stress_of(solver, i).xx; });
    scalar("sigma_yy", [&](std::size_t i) { return effective_stress_of(solver, i).yy; });
    scalar("sigma_xy", [&](std::size_t i) { return effective_stress_of(solver, i).xy; });
    scalar("sigma_max",
           [&](std::size_t i) { return principal_values(effective_stress_of(solver, i)).max; });
    scalar("sigma_min",
           [&](std::size_t i) { return principal_values(effective_stress_of(solver, i)).min; });
    scalar("damage", [&](std::size_t i) { return st.dmg[i].D; });
    scalar("connectivity_damage", [&](std::size_t i) { return conn[i]; });
    scalar("region", [&](std::size_t i) { return double(particles.region[i]); });
    scalar("boundary", [&](std::size_t i) { return double(particles.boundary[i]); });
    if (!out) throw IoError("write failed for VTK file '" + path + "'");
}

void write_failed_bonds_csv(const Solver& solver, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    const SpringNetwork& net = solver.network();
    const State& st = solver.state();
    out << "bond,i,j,xmid_m,ymid_m\n";
    for (std::size_t b = 0; b < net.bond_count(); ++b) {
        if (!net.failed[b]) continue;
        const Vec2 mid = 0.5 * (st.pos[net.bond_i[b]] + st.pos[net.bond_j[b]]);
        out << b << ',' << net.bond_i[b] << ',' << net.bond_j[b] << ',' << full(mid.x) << ','
            << full(mid.y) << "\n";
    }
}

void write_bonds_csv(const Solver& solver, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    const SpringNetwork& net = solver.network();
    out << "bond,i,j,rest_length_m,kappa,f,failed\n";
    for (std::size_t b = 0; b < net.bond_count(); ++b) {
        out << b << ',' << net.bond_i[b] << ',' << net.bond_j[b] << ','
            << full(net.rest_length[b]) << ',' << full(net.kappa[b]) << ',' << full(net.f[b])
            << ',' << static_cast<int>(net.failed[b] != 0) << "\n";
    }
}

void write_failure_events_csv(const std::vector<FailureEvent>& events,
                              const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "time_s,step,bond,i,j,xmid_m,ymid_m\n";
    for (const FailureEvent& e : events) {
        out << full(e.time) << ',' << e.step << ',' << e.bond << ',' << e.i << ',' << e.j
            << ',' << full(e.midpoint.x) << ',' << full(e.midpoint.y) << "\n";
    }
}

namespace {

// Single-linkage clustering via union-find over midpoints within `radius`.
struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

CrackProfile profile_from_midpoints(std::vector<Vec2> midpoints, double interface_y,
                                    double dam_height, double dp) {
    CrackProfile profile;
    profile.failed_midpoints = std::move(midpoints);
    profile.failed_count = static_cast<long>(profile.failed_midpoints.size());

    // Base crack: x-extent of failures within 2*dp of the interface line.
    double xmin = 0.0, xmax = 0.0;
    bool any_base = false;
    for (const Vec2& m : profile.failed_midpoints) {
        if (std::abs(m.y - interface_y) > 2.0 * dp) continue;
        if (!any_base) {
            xmin = xmax = m.x;
            any_base = true;
        } else {
            xmin = std::min(xmin, m.x);
            xmax = std::max(xmax, m.x);
        }
    }
    profile.base_extent_m = any_base ? xmax - xmin : 0.0;

    // Neck crack: largest cluster above 60% of the dam height.
    std::vector<Vec2> neck;
    for (const Vec2& m : profile.failed_midpoints) {
        if (m.y - interface_y > 0.6 * dam_height) neck.push_back(m);
    }
    if (!neck.empty()) {
        UnionFind uf(neck.size());
        const double r2 = (2.0 * dp) * (2.0 * dp);
        for (std::size_t a = 0; a < neck.size(); ++a) {
            for (std::size_t b = a + 1; b < neck.size(); ++b) {
                if (norm2(neck[a] - neck[b]) <= r2)
                    uf.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
            }
        }
        std::vector<int> count(neck.size(), 0);
        for (std::size_t a = 0; a < neck.size(); ++a)
            ++count[uf.find(static_cast<std::uint32_t>(a))];
        const std::size_t best =
            std::max_element(count.begin(), count.end()) - count.begin();
        double sum_y = 0.0;
        int members = 0;
        for (std::size_t a = 0; a < neck.size(); ++a) {
            if (uf.find(static_cast<std::uint32_t>(a)) == best) {
                sum_y += neck[a].y;
                ++members;
            }
        }
        profile.has_neck_cluster = true;
        profile.neck_elevation_m = sum_y / members;
    }
    return profile;
}

}  // namespace

CrackProfile extract_cracks(const std::vector<Vec2>& positions, const SpringNetwork& network,
                            double threshold, double interface_y, double dam_height,
                            double dp) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw ConfigError("extract_cracks: threshold must lie in (0, 1]");
    std::vector<Vec2> midpoints;
    for (std::size_t b = 0; b < network.bond_count(); ++b) {
        if (!network.failed[b]) continue;
        midpoints.push_back(0.5 * (positions[network.bond_i[b]] + positions[network.bond_j[b]]));
    }
    CrackProfile profile = profile_from_midpoints(std::move(midpoints), interface_y,
                                                  dam_height, dp);
    const std::vector<double> conn = connectivity_damage(network);
    for (std::size_t i = 0; i < conn.size(); ++i) {
        if (conn[i] >= threshold) profile.over_threshold.push_back(static_cast<std::uint32_t>(i));
    }
    return profile;
}

CrackProfile extract_cracks_from_midpoints(const std::vector<Vec2>& midpoints,
                                           double interface_y, double dam_height, double dp) {
    return profile_from_midpoints(midpoints, interface_y, dam_height, dp);
}

TimeSeriesLog::TimeSeriesLog(const std::string& path, const std::vector<Vec2>& probes,
                             const Solver& solver, double dp) {
    const State& st = solver.state();
    for (const Vec2& probe : probes) {
        std::uint32_t best = 0;
        double best2 = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < st.size(); ++i) {
            const double d2 = norm2(st.pos[i] - probe);
            if (d2 < best2) {
                best2 = d2;
                best = static_cast<std::uint32_t>(i);
            }
        }
        if (best2 > 4.0 * dp * dp)
            throw ConfigError("probe (" + std::to_string(probe.x) + ", " +
                              std::to_string(probe.y) + ") lies outside the domain");
        probe_ids_.push_back(best);
        probe_start_.push_back(st.pos[best]);
    }

    out_.open(path);
    if (!out_) throw IoError("cannot write log '" + path + "'");
    out_ << "time_s,step,kinetic_J,strain_J,visc_J,damp_mass_J,damp_kv_J,damage_J,"
            "work_gravity_J,work_boundary_J,failed_bonds,max_damage";
    for (std::size_t p = 0; p < probe_ids_.size(); ++p)
        out_ << ",probe" << p << "_dx_m,probe" << p << "_dy_m";
    out_ << "\n";
}

void TimeSeriesLog::record(const Solver& solver) {
    const State& st = solver.state();
    const EnergyAudit& audit = solver.audit();
    out_ << full(st.time) << ',' << st.step << ',' << full(solver.kinetic_energy()) << ','
         << full(solver.strain_energy()) << ',' << full(audit.visc_dissipated) << ','
         << full(audit.damp_mass) << ',' << full(audit.damp_kv) << ','
         << full(audit.damage_dissipated) << ',' << full(audit.work_gravity) << ','
         << full(audit.work_boundary) << ',' << solver.failed_bond_count() << ','
         << full(solver.max_damage());
    for (std::size_t p = 0; p < probe_ids_.size(); ++p) {
        const Vec2 d = st.pos[probe_ids_[p]] - probe_start_[p];
        out_ << ',' << full(d.x) << ',' << full(d.y);
    }
    out_ << "\n";
    out_.flush();
}

}  // namespace pssph
