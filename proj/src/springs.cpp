#include "pssph/springs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "pssph/damage.hpp"
#include "pssph/errors.hpp"

namespace pssph {

std::uint32_t SpringNetwork::bond_index(std::uint32_t i, std::uint32_t j) const {
    if (i >= particle_count()) return npos;
    const std::uint32_t* first = adj_neighbor.data() + adj_offsets[i];
    const std::uint32_t* last = adj_neighbor.data() + adj_offsets[i + 1];
    const std::uint32_t* it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return npos;
    return adj_bond[it - first];
}

SpringNetwork init_network(const ParticleSet& particles, const NeighborList& neighbors,
                           const std::vector<Material>& materials) {
    const std::size_t n = particles.size();
    SpringNetwork net;

    net.bond_i.reserve(neighbors.pairs.size());
    net.bond_j.reserve(neighbors.pairs.size());
    for (const auto& [i, j] : neighbors.pairs) {
        net.bond_i.push_back(i);
        net.bond_j.push_back(j);
        net.rest_length.push_back(norm(particles.pos[i] - particles.pos[j]));
        // A bond across a material boundary fractures like the weaker side.
        const int mi = particles.material[i];
        const int mj = particles.material[j];
        const int mb = materials[mi].f_t <= materials[mj].f_t ? mi : mj;
        net.bond_material.push_back(mb);
    }
    const std::size_t nb = net.bond_count();
    net.kappa.assign(nb, 0.0);
    net.f.assign(nb, 1.0);
    net.failed.assign(nb, 0);

    // Symmetric adjacency mirrors the neighbor list rows (already sorted).
    net.adj_offsets.assign(n + 1, 0);
    for (std::size_t b = 0; b < nb; ++b) {
        ++net.adj_offsets[net.bond_i[b] + 1];
        ++net.adj_offsets[net.bond_j[b] + 1];
    }
    for (std::size_t i = 0; i < n; ++i) net.adj_offsets[i + 1] += net.adj_offsets[i];
    net.adj_neighbor.resize(net.adj_offsets[n]);
    net.adj_bond.resize(net.adj_offsets[n]);
    {
        std::vector<std::uint32_t> cursor(net.adj_offsets.begin(), net.adj_offsets.end() - 1);
        for (std::uint32_t b = 0; b < nb; ++b) {
            const std::uint32_t i = net.bond_i[b];
            const std::uint32_t j = net.bond_j[b];
            net.adj_neighbor[cursor[i]] = j;
            net.adj_bond[cursor[i]++] = b;
            net.adj_neighbor[cursor[j]] = i;
            net.adj_bond[cursor[j]++] = b;
        }
    }
    // Bonds are emitted with i ascending and j ascending within each i, so
    // each row's neighbor entries arrive already sorted for rows fed from the
    // i side; rows fed from the j side interleave — sort each row once.
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t lo = net.adj_offsets[i];
        const std::uint32_t hi = net.adj_offsets[i + 1];
        std::vector<std::pair<std::uint32_t, std::uint32_t>> row;
        row.reserve(hi - lo);
        for (std::uint32_t k = lo; k < hi; ++k)
            row.emplace_back(net.adj_neighbor[k], net.adj_bond[k]);
        std::sort(row.begin(), row.end());
        for (std::uint32_t k = lo; k < hi; ++k) {
            net.adj_neighbor[k] = row[k - lo].first;
            net.adj_bond[k] = row[k - lo].second;
        }
    }
    return net;
}

void update_bonds(SpringNetwork& network, const std::vector<Vec2>& positions,
                  const std::vector<Material>& materials, BondLength length_mode, long step) {
    const long long nb = static_cast<long long>(network.bond_count());
    std::atomic<long long> bad{-1};
    std::atomic<int> failures{0};

#pragma omp parallel for schedule(static)
    for (long long b = 0; b < nb; ++b) {
        if (network.failed[b]) continue;
        const std::uint32_t i = network.bond_i[b];
        const std::uint32_t j = network.bond_j[b];
        const double len = norm(positions[i] - positions[j]);
        if (!std::isfinite(len)) {
            long long expect = -1;
            bad.compare_exchange_strong(expect, static_cast<long long>(i));
            continue;
        }
        const double strain = (len - network.rest_length[b]) / network.rest_length[b];
        if (strain <= network.kappa[b]) continue;  // tensile-only, history max
        if (strain <= 0.0) continue;
        network.kappa[b] = strain;
        const Material& mat = materials[network.bond_material[b]];
        const double length =
            length_mode == BondLength::rest ? network.rest_length[b] : mat.h_c;
        const double d = damage_value(network.kappa[b], mat, length);
        if (d >= kDamageCap) {
            network.f[b] = 0.0;
            network.failed[b] = 2;  // transition marker, demoted below
            failures.fetch_add(1, std::memory_order_relaxed);
        } else {
            network.f[b] = std::min(network.f[b], 1.0 - d);
        }
    }

    if (bad.load() >= 0)
        throw NumericalError("update_bonds: non-finite particle position", step, bad.load());

    network.newly_failed.clear();
    if (failures.load() > 0) {
        // Rare path: collect this call's severed bonds in ascending id order.
        for (long long b = 0; b < nb; ++b) {
            if (network.failed[b] == 2) {
                network.newly_failed.push_back(static_cast<std::uint32_t>(b));
                network.failed[b] = 1;
            }
        }
    }
}

std::vector<double> connectivity_damage(const SpringNetwork& network) {
    const std::size_t n = network.particle_count();
    std::vector<double> cd(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t lo = network.adj_offsets[i];
        const std::uint32_t hi = network.adj_offsets[i + 1];
        if (hi == lo) continue;
        double sum = 0.0;
        for (std::uint32_t k = lo; k < hi; ++k) sum += network.f[network.adj_bond[k]];
        cd[i] = 1.0 - sum / static_cast<double>(hi - lo);
    }
    return cd;
}

}  // namespace pssph
