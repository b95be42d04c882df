#pragma once

#include <utility>
#include <vector>

namespace udgcp {

/// Perfect matching on the cyclic points 1..2m; arcs stored as (a, b) with a < b,
/// read as the arc from a counterclockwise to b. Arcs sorted lexicographically.
struct CircularPairing {
    int m = 0;
    std::vector<std::pair<int, int>> arcs;

    bool valid() const;
    auto operator<=>(const CircularPairing&) const = default;
};

/// Vertices = arcs (indices into p.arcs); edge iff endpoints interleave.
struct CACGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::vector<std::pair<int, int>> edges;
};

bool arcs_cross(std::pair<int, int> a, std::pair<int, int> b);

CACGraph cac_graph(const CircularPairing& p);

/// No K_{z,z} subgraph (two disjoint z-sets, complete in between).
bool is_kzz_free(const CACGraph& g, int z);

/// Crossing graph for arbitrary endpoint labels (pairs of positions on a circle).
bool pairs_kzz_free(const std::vector<std::pair<int, int>>& pairs, int z);

/// Every K_{z,z}-free pairing of 2m points, lexicographic. Built level by level:
/// each round inserts an antichain of arcs with stretch <= 4z under the previous
/// levels, keeps candidates meeting the level claim, and filters by is_kzz_free.
std::vector<CircularPairing> enumerate_kzz_free(int m, int z);

/// Oracle: all (2m-1)!! matchings filtered by is_kzz_free.
std::vector<CircularPairing> enumerate_kzz_free_filter(int m, int z);

/// Containment layers: level 1 = arcs not contained in any other, and so on.
std::vector<int> arc_levels(const CircularPairing& p);

}  // namespace udgcp
