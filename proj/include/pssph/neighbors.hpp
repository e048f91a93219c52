#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pssph/math2d.hpp"

namespace pssph {

/// Adjacency of all particle pairs closer than the search radius, in
/// compressed-row form. Neighbor indices of each particle are sorted
/// ascending so traversal order (and therefore floating-point summation
/// order) is reproducible. `pairs` lists each unordered pair once with
/// i < j.
struct NeighborList {
    std::vector<std::uint32_t> offsets;  ///< size n+1
    std::vector<std::uint32_t> indices;  ///< flattened neighbor ids
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

    std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
    std::size_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
    const std::uint32_t* begin_of(std::size_t i) const { return indices.data() + offsets[i]; }
    const std::uint32_t* end_of(std::size_t i) const { return indices.data() + offsets[i + 1]; }
};

/// Uniform background grid over the particle bounding box with cell size
/// equal to the search radius; rebuilt from scratch each call.
class NeighborSearch {
  public:
    explicit NeighborSearch(double radius);

    /// Finds all pairs with |x_i - x_j| < radius (strict).
    NeighborList build(const std::vector<Vec2>& positions) const;

    double radius() const { return radius_; }

  private:
    double radius_;
};

/// O(n^2) reference used to validate the grid search in tests.
NeighborList brute_force_neighbors(const std::vector<Vec2>& positions, double radius);

}  // namespace pssph
