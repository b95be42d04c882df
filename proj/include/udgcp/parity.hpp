#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "udgcp/geometry.hpp"
#include "udgcp/grid_map.hpp"
#include "udgcp/sc_decomp.hpp"
#include "udgcp/udg.hpp"

namespace udgcp {

using Polyline = std::vector<GPoint>;

/// Boundary curves of a region (closed polygons, region on the left of each)
/// and one connector per pair of curves.
struct ParityFrame {
    std::vector<Polyline> curves;
    std::map<std::pair<int, int>, Polyline> lambda;  // (i, j), i < j: from curve i to curve j
};

/// Connectors: straight or L-shaped polylines between nearby boundary points,
/// inside the region, touching curves only at their ends and keeping eps away
/// from the given points. Throws when some pair cannot be connected.
ParityFrame make_frame(std::vector<Polyline> curves, const std::vector<GPoint>& avoid, long double eps = 1e-6L);

/// Winding-number membership in the region bounded by the frame's curves.
bool in_region(const ParityFrame& f, GPoint p);

/// Arc length from curve[0] to p, walking the curve in its listed direction.
long double curve_param(const Polyline& curve, GPoint p);
long double curve_length(const Polyline& curve);

/// Position of p on curve c, measured from where the connector to curve `other` starts.
long double frame_position(const ParityFrame& f, int c, int other, GPoint p);

/// Crossing points of an open polyline with another; one per crossing point.
int crossing_count(const Polyline& path, const Polyline& lambda);

/// Parity of the number of times path crosses the connector between curves c and c2 (true: odd).
bool crossing_parity(const Polyline& path, const ParityFrame& f, int c, int c2);

/// Pairs (x1,y1) and (x2,y2) with x's on one curve and y's on another, given as
/// frame positions: their ends alternate along the curve made of C, the
/// connector, C' and the connector again.
inline bool cross_ordered(long double x1, long double y1, long double x2, long double y2) {
    return (x1 < x2) == (y1 < y2);
}

/// A path of a partial solution restricted to a piece, extended along its cut
/// edges to where their traces first leave the piece.
struct AnchoredPath {
    std::vector<int> vertices;        // inside the piece, in path order
    std::array<int, 2> cut_edge{};    // G-edge leaving at each end
    std::array<Crossing, 2> exit{};   // trace transition where it leaves
    std::array<GPoint, 2> point{};    // exit point in grid space
};

/// Anchored paths of the solution edges at node t. Components that are cycles,
/// or have an end without a solution edge leaving V_t, are not anchored.
std::vector<AnchoredPath> anchored_paths(const SCDecomposition& sc, const UnitDiskGraph& g, const GridMap& map,
                                         int t, const std::vector<int>& solution_edges);

}  // namespace udgcp
