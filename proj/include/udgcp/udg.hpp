#pragma once

#include <utility>
#include <vector>

#include "udgcp/common.hpp"
#include "udgcp/geometry.hpp"

namespace udgcp {

/// Points plus a straight-line drawn edge set. build_udg produces the unit disk
/// graph; from_edges builds arbitrary drawings for predicate tests.
struct UnitDiskGraph {
    std::vector<Point> points;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted
    AdjList adj;                             // sorted neighbour lists

    int n() const { return static_cast<int>(points.size()); }
    int m() const { return static_cast<int>(edges.size()); }
    bool adjacent(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int edge_id(int u, int v) const;  // -1 if absent

    static UnitDiskGraph from_edges(std::vector<Point> pts, std::vector<std::pair<int, int>> edges);
};

/// Edge iff squared distance <= 1 (exact). Throws InputError on duplicate points.
UnitDiskGraph build_udg(const std::vector<Point>& points);

struct SegmentCrossing {
    int edge_a = -1, edge_b = -1;  // edge_a < edge_b
    Point point;
};

/// Every properly crossing pair of edges, once, sorted by (edge_a, edge_b).
std::vector<SegmentCrossing> find_crossings(const UnitDiskGraph& g);

/// Reference O(m^2) crossing enumeration.
std::vector<SegmentCrossing> find_crossings_naive(const UnitDiskGraph& g);

struct IcfReport {
    bool ok = true;
    std::vector<SegmentCrossing> violations;
};

/// icf-property: for every crossing pair xx', yy', three of {x,x',y,y'} form a triangle.
IcfReport check_icf(const UnitDiskGraph& g);

}  // namespace udgcp
