#pragma once

#include <cstdint>
#include <vector>

#include "pssph/lattice.hpp"
#include "pssph/material.hpp"
#include "pssph/math2d.hpp"
#include "pssph/neighbors.hpp"

namespace pssph {

/// Which length enters the bond softening law: the bond's own rest length
/// (dimensionally local) or the material characteristic length h_c.
enum class BondLength { rest, characteristic };

/// Network of virtual springs over the initial neighbor pairs. A bond's
/// interaction factor f starts at 1 and decays irreversibly with the damage
/// accumulated from tensile bond strain; a fully damaged bond is severed for
/// good. Structure-of-arrays; bonds stored once in canonical (i < j) order,
/// adjacency rows sorted by neighbor index for reproducible traversal.
struct SpringNetwork {
    static constexpr std::uint32_t npos = 0xffffffffu;

    std::vector<std::uint32_t> bond_i;
    std::vector<std::uint32_t> bond_j;
    std::vector<double> rest_length;
    std::vector<double> kappa;    ///< max tensile bond strain ever seen
    std::vector<double> f;        ///< interaction factor in [0, 1]
    std::vector<std::uint8_t> failed;
    std::vector<int> bond_material;

    // Full symmetric adjacency: for particle i, neighbors adj_neighbor[k] and
    // their bond ids adj_bond[k] for k in [adj_offsets[i], adj_offsets[i+1]).
    std::vector<std::uint32_t> adj_offsets;
    std::vector<std::uint32_t> adj_neighbor;
    std::vector<std::uint32_t> adj_bond;

    /// Bond ids that crossed into full failure during the last update, in
    /// ascending order; empty most steps.
    std::vector<std::uint32_t> newly_failed;

    std::size_t bond_count() const { return bond_i.size(); }
    std::size_t particle_count() const {
        return adj_offsets.empty() ? 0 : adj_offsets.size() - 1;
    }

    /// Bond id joining i and j, or npos when they were never bonded.
    std::uint32_t bond_index(std::uint32_t i, std::uint32_t j) const;

    /// Current interaction factor for the pair; 0 when unbonded or severed.
    double interaction_factor(std::uint32_t i, std::uint32_t j) const {
        const std::uint32_t b = bond_index(i, j);
        return b == npos ? 0.0 : f[b];
    }
};

/// Creates fully intact bonds over every initial neighbor pair. A bond whose
/// endpoints carry different materials takes the fracture constants of the
/// weaker one (smaller tensile strength).
SpringNetwork init_network(const ParticleSet& particles, const NeighborList& neighbors,
                           const std::vector<Material>& materials);

/// Advances bond damage from current positions: tensile bond strain feeds the
/// softening law through the per-bond material; f never increases, and a bond
/// whose damage reaches the cap is severed permanently. Fills
/// `network.newly_failed`.
void update_bonds(SpringNetwork& network, const std::vector<Vec2>& positions,
                  const std::vector<Material>& materials,
                  BondLength length_mode = BondLength::rest, long step = -1);

/// Per-particle 1 − (mean f over incident bonds); 0 for bond-less particles.
std::vector<double> connectivity_damage(const SpringNetwork& network);

}  // namespace pssph
