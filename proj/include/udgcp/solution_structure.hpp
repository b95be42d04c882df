#pragma once

#include <optional>
#include <vector>

#include "udgcp/grid_map.hpp"
#include "udgcp/oracle.hpp"
#include "udgcp/udg.hpp"

namespace udgcp {

struct Cleaned {
    UnitDiskGraph g;           // induced on the kept vertices, renumbered
    std::vector<int> original; // new id -> input id
    std::vector<int> removed;  // input ids in removal order
};

/// Repeatedly drops a vertex of degree at most one (lowest id first).
Cleaned clean(const UnitDiskGraph& g);

struct DenseOptions {
    double c = -1;  // threshold multiplier; negative: conservative default from beta
    int beta = 61;
};

/// Threshold multiplier bounding degree->=3 vertices of a no-instance by c*k:
/// 3 removed per harvested triangle, 4 per cell over beta cells for their
/// neighbours, as many again for the pruned forest, 10 from Euler counting.
double dense_threshold(int beta);

struct DenseResult {
    std::vector<Cycle> cycles;  // exactly k, pairwise vertex-disjoint
    int harvested = 0;          // triangles taken at crossings
    int faces = 0;              // face cycles from the colour class
};

/// k vertex-disjoint cycles when g has more than c*k vertices of degree >= 3 and
/// the triangle harvest plus face colouring finds them; none otherwise.
std::optional<DenseResult> dense_extract(const UnitDiskGraph& g, int k, const DenseOptions& opt = {});

/// Proper colouring with at most 5 colours of a planar graph (Kempe chains).
/// Loops are ignored; parallel edges are fine.
std::vector<int> five_colour(const AdjList& adj);

/// Vertex-disjoint cycles taken greedily, a shortest cycle of the remaining
/// graph each time. A lower bound for the optimum.
std::vector<Cycle> greedy_packing(const AdjList& adj);

/// 3 * beta^2.
long long packedness_constant(const MapConstants& mc);

/// Largest number, over cells, of vertices lying on cycles that are not
/// triangles inside one cell.
int inter_cell_load(const GridMap& map, const std::vector<Cycle>& cycles);

}  // namespace udgcp
