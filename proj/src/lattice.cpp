#include "pssph/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pssph/errors.hpp"

namespace pssph {

double Polygon::area() const {
    // Shoelace formula; orientation-independent.
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

void Polygon::bounds(Vec2& lo, Vec2& hi) const {
    lo = Vec2{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    hi = Vec2{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Vec2& v : vertices) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
    }
}

namespace {

// Squared distance from p to segment ab.
double segment_dist2(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const Vec2 ap = p - a;
    const double len2 = norm2(ab);
    double t = len2 > 0.0 ? dot(ap, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 closest = a + t * ab;
    return norm2(p - closest);
}

// Proper segment intersection test (shared endpoints excluded by caller).
int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (cross > 0.0) return 1;
    if (cross < 0.0) return -1;
    return 0;
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

bool Polygon::is_simple() const {
    const std::size_t n = vertices.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices[i];
        const Vec2 b = vertices[(i + 1) % n];
        if (norm2(b - a) == 0.0) return false;  // degenerate edge
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip edges sharing a vertex with edge i.
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Vec2 c = vertices[j];
            const Vec2 d = vertices[(j + 1) % n];
            if (segments_cross(a, b, c, d)) return false;
        }
    }
    return true;
}

bool Polygon::contains(Vec2 p, double edge_eps) const {
    const std::size_t n = vertices.size();
    // Boundary points count as inside.
    const double eps2 = edge_eps * edge_eps;
    for (std::size_t i = 0; i < n; ++i) {
        if (segment_dist2(p, vertices[i], vertices[(i + 1) % n]) <= eps2) return true;
    }
    // Even-odd ray crossing (ray toward +x).
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices[i];
        const Vec2 b = vertices[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

void ParticleSet::append(const ParticleSet& other) {
    pos.insert(pos.end(), other.pos.begin(), other.pos.end());
    vel.insert(vel.end(), other.vel.begin(), other.vel.end());
    mass.insert(mass.end(), other.mass.begin(), other.mass.end());
    volume.insert(volume.end(), other.volume.begin(), other.volume.end());
    rho.insert(rho.end(), other.rho.begin(), other.rho.end());
    material.insert(material.end(), other.material.begin(), other.material.end());
    region.insert(region.end(), other.region.begin(), other.region.end());
    boundary.insert(boundary.end(), other.boundary.begin(), other.boundary.end());
}

ParticleSet fill_polygon(const RegionPolygon& region, double spacing, const Material& mat,
                         int region_index) {
    if (spacing <= 0.0) throw ConfigError("fill_polygon: spacing must be positive");
    const Polygon& poly = region.polygon;
    if (poly.vertices.size() < 3 || !poly.is_simple())
        throw ConfigError("fill_polygon: polygon must be simple with >= 3 vertices");
    if (poly.area() < spacing * spacing)
        throw ConfigError("fill_polygon: region '" + region.label +
                          "' is degenerate (area < spacing^2)");

    Vec2 lo, hi;
    poly.bounds(lo, hi);
    // Lattice anchored at bounding-box minimum plus half a spacing; row-major
    // over (iy, ix) so the fill order is deterministic.
    const int nx = static_cast<int>(std::floor((hi.x - lo.x) / spacing)) + 1;
    const int ny = static_cast<int>(std::floor((hi.y - lo.y) / spacing)) + 1;

    ParticleSet out;
    const double m = mat.rho0 * spacing * spacing;
    const double vol = spacing * spacing;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const Vec2 p{lo.x + (ix + 0.5) * spacing, lo.y + (iy + 0.5) * spacing};
            if (!poly.contains(p)) continue;
            out.pos.push_back(p);
            out.vel.push_back(Vec2{0.0, 0.0});
            out.mass.push_back(m);
            out.volume.push_back(vol);
            out.rho.push_back(mat.rho0);
            out.material.push_back(region.material_id);
            out.region.push_back(region_index);
            out.boundary.push_back(0);
        }
    }
    if (out.size() == 0)
        throw ConfigError("fill_polygon: region '" + region.label + "' produced no particles");
    return out;
}

void tag_boundary(ParticleSet& particles, double band, double spacing, bool include_sides,
                  int foundation_region) {
    if (band < spacing)
        throw ConfigError("tag_boundary: band must be at least one particle spacing");

    // Extent of the foundation region, or of the whole domain when no
    // foundation exists (dam-only scenes clamp their own bottom row).
    double min_y = std::numeric_limits<double>::max();
    double min_x = std::numeric_limits<double>::max();
    double max_x = std::numeric_limits<double>::lowest();
    bool found = false;
    for (std::size_t i = 0; i < particles.size(); ++i) {
        if (foundation_region >= 0 && particles.region[i] != foundation_region) continue;
        found = true;
        min_y = std::min(min_y, particles.pos[i].y);
        min_x = std::min(min_x, particles.pos[i].x);
        max_x = std::max(max_x, particles.pos[i].x);
    }
    if (!found) {
        for (std::size_t i = 0; i < particles.size(); ++i) {
            min_y = std::min(min_y, particles.pos[i].y);
            min_x = std::min(min_x, particles.pos[i].x);
            max_x = std::max(max_x, particles.pos[i].x);
        }
    }

    for (std::size_t i = 0; i < particles.size(); ++i) {
        const bool in_region =
            !found || foundation_region < 0 || particles.region[i] == foundation_region;
        if (!in_region) continue;
        const Vec2 p = particles.pos[i];
        bool flag = p.y - min_y < band;
        if (include_sides && found)
            flag = flag || (p.x - min_x < band) || (max_x - p.x < band);
        if (flag) particles.boundary[i] = 1;
    }
}

}  // namespace pssph
