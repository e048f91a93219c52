#include "pssph/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pssph {

NeighborSearch::NeighborSearch(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("NeighborSearch: radius must be positive");
}

namespace {

void finalize_pairs(NeighborList& list) {
    list.pairs.clear();
    for (std::uint32_t i = 0; i + 1 < list.offsets.size(); ++i) {
        for (const std::uint32_t* j = list.begin_of(i); j != list.end_of(i); ++j) {
            if (*j > i) list.pairs.emplace_back(i, *j);
        }
    }
}

}  // namespace

NeighborList NeighborSearch::build(const std::vector<Vec2>& positions) const {
    const std::size_t n = positions.size();
    NeighborList list;
    list.offsets.assign(n + 1, 0);
    if (n == 0) return list;

    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    for (const Vec2& p : positions) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
    }
    Vec2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Vec2& p : positions) {
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }

    const double cell = radius_;
    const auto cell_of = [&](Vec2 p) {
        const int cx = static_cast<int>(std::floor((p.x - lo.x) / cell));
        const int cy = static_cast<int>(std::floor((p.y - lo.y) / cell));
        return std::pair<int, int>{cx, cy};
    };
    const int ncx = static_cast<int>(std::floor((hi.x - lo.x) / cell)) + 1;
    const int ncy = static_cast<int>(std::floor((hi.y - lo.y) / cell)) + 1;

    // Counting sort of particles into cells keeps per-cell lists ordered by
    // particle index.
    std::vector<std::uint32_t> cell_start(static_cast<std::size_t>(ncx) * ncy + 1, 0);
    std::vector<std::uint32_t> cell_id(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [cx, cy] = cell_of(positions[i]);
        cell_id[i] = static_cast<std::uint32_t>(cy) * ncx + cx;
        ++cell_start[cell_id[i] + 1];
    }
    for (std::size_t c = 1; c < cell_start.size(); ++c) cell_start[c] += cell_start[c - 1];
    std::vector<std::uint32_t> cell_items(n);
    {
        std::vector<std::uint32_t> cursor(cell_start.begin(), cell_start.end() - 1);
        for (std::uint32_t i = 0; i < n; ++i) cell_items[cursor[cell_id[i]]++] = i;
    }

    const double r2 = radius_ * radius_;
    // Count pass then fill pass so the index array is allocated exactly once.
    std::vector<std::uint32_t> degree(n, 0);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const auto [cx, cy] = cell_of(positions[i]);
        std::uint32_t count = 0;
        for (int dy = -1; dy <= 1; ++dy) {
            const int y = cy + dy;
            if (y < 0 || y >= ncy) continue;
            for (int dx = -1; dx <= 1; ++dx) {
                const int x = cx + dx;
                if (x < 0 || x >= ncx) continue;
                const std::uint32_t c = static_cast<std::uint32_t>(y) * ncx + x;
                for (std::uint32_t s = cell_start[c]; s < cell_start[c + 1]; ++s) {
                    const std::uint32_t j = cell_items[s];
                    if (j == i) continue;
                    if (norm2(positions[i] - positions[j]) < r2) ++count;
                }
            }
        }
        degree[i] = count;
    }

    for (std::size_t i = 0; i < n; ++i) list.offsets[i + 1] = list.offsets[i] + degree[i];
    list.indices.resize(list.offsets[n]);

#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const auto [cx, cy] = cell_of(positions[i]);
        std::uint32_t* out = list.indices.data() + list.offsets[i];
        for (int dy = -1; dy <= 1; ++dy) {
            const int y = cy + dy;
            if (y < 0 || y >= ncy) continue;
            for (int dx = -1; dx <= 1; ++dx) {
                const int x = cx + dx;
                if (x < 0 || x >= ncx) continue;
                const std::uint32_t c = static_cast<std::uint32_t>(y) * ncx + x;
                for (std::uint32_t s = cell_start[c]; s < cell_start[c + 1]; ++s) {
                    const std::uint32_t j = cell_items[s];
                    if (j == i) continue;
                    if (norm2(positions[i] - positions[j]) < r2) *out++ = j;
                }
            }
        }
        std::sort(list.indices.data() + list.offsets[i], out);
    }

    finalize_pairs(list);
    return list;
}

NeighborList brute_force_neighbors(const std::vector<Vec2>& positions, double radius) {
    const std::size_t n = positions.size();
    const double r2 = radius * radius;
    NeighborList list;
    list.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && norm2(positions[i] - positions[j]) < r2) ++count;
        }
        list.offsets[i + 1] = list.offsets[i] + count;
    }
    list.indices.resize(list.offsets[n]);
    std::uint32_t* out = list.indices.data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (j != i && norm2(positions[i] - positions[j]) < r2) *out++ = j;
        }
    }
    finalize_pairs(list);
    return list;
}

}  // namespace pssph
