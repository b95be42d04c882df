#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "udgcp/geometry.hpp"
#include "udgcp/udg.hpp"

namespace udgcp {

struct CellId {
    long long i = 0, j = 0;
    auto operator<=>(const CellId&) const = default;
};

struct CellStats {
    CellId cell;
    int count = 0;
    double clique_weight = 0;
};

struct MapConstants {
    int alpha = 5;
    int beta = 61;
    int kappa = 221;
};

/// Grid of squares with side 1/sqrt(2) in input units. Internally every point is
/// mapped to grid space where cells are unit squares with integer corners.
struct GridMap {
    double cell_side = 0.70710678118654752440;
    long double ox = 0, oy = 0;  // offset in input units
    std::vector<GPoint> gpos;    // grid-space position of each G-vertex
    std::vector<CellId> cell_of;
    std::map<CellId, std::vector<int>> occupied;
    std::uint64_t attempts = 0;  // offset candidates tried

    GPoint to_grid(const Point& p) const;
    Point from_grid(GPoint q) const;
    int count(CellId c) const;
    double clique_weight(CellId c) const;
    std::vector<CellStats> stats() const;
    double total_weight() const;
};

/// log2(count + 1)
double clique_weight_of(int count);

/// Deterministic offset from an input hash; retried while a vertex is near a grid
/// line, an edge passes near a grid corner, or two edges cross a grid line at the
/// same point. Throws InputError for collinear overlapping edges.
GridMap build_map(const UnitDiskGraph& g, std::uint64_t salt = 0);

/// Shortest path length in the 4-adjacency dual of the grid (L1 distance).
long long cell_distance(CellId a, CellId b);

/// Cell containing a grid-space point (floor convention).
CellId cell_at(GPoint p);

/// Cells whose interior a grid-space segment meets, in order along the segment.
std::vector<CellId> cells_on_segment(GPoint a, GPoint b);

/// |{(i,j) : |i|+|j| <= r}|
int lattice_ball(int r);

MapConstants compute_constants(const GridMap& map, const UnitDiskGraph& g);

/// Analytic constants for the 1/sqrt(2) grid (alpha = 5).
MapConstants default_constants();

/// Cells at dual distance <= r from c.
std::vector<CellId> neighbourhood(CellId c, int r);

}  // namespace udgcp
