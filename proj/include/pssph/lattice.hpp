#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pssph/material.hpp"
#include "pssph/math2d.hpp"

namespace pssph {

struct Polygon {
    std::vector<Vec2> vertices;  ///< ordered, implicitly closed

    double area() const;             ///< shoelace, always >= 0
    bool is_simple() const;          ///< no self-intersection
    void bounds(Vec2& lo, Vec2& hi) const;
    /// Interior or boundary test; points within `edge_eps` of an edge count
    /// as inside.
    bool contains(Vec2 p, double edge_eps = 1e-9) const;
};

struct RegionPolygon {
    Polygon polygon;
    int material_id = 0;
    std::string label;
};

/// Per-particle arrays of the initial configuration. Velocities start at
/// zero; density at the material reference.
struct ParticleSet {
    std::vector<Vec2> pos;
    std::vector<Vec2> vel;
    std::vector<double> mass;       ///< rho0 * spacing^2 (unit thickness)
    std::vector<double> volume;     ///< spacing^2 * 1 m
    std::vector<double> rho;
    std::vector<int> material;
    std::vector<int> region;
    std::vector<std::uint8_t> boundary;

    std::size_t size() const { return pos.size(); }
    void append(const ParticleSet& other);
};

/// Fills the polygon with a square lattice anchored at the polygon bounding
/// box minimum plus spacing/2, row-major by lattice index. Boundary points
/// are included.
ParticleSet fill_polygon(const RegionPolygon& region, double spacing, const Material& mat,
                         int region_index = 0);

/// Flags particles within `band` of the bottom edge of the foundation region
/// (or of the whole domain when `foundation_region` is negative), optionally
/// also within `band` of the foundation's lateral edges.
void tag_boundary(ParticleSet& particles, double band, double spacing,
                  bool include_sides = false, int foundation_region = -1);

}  // namespace pssph
