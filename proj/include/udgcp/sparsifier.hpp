#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "udgcp/grid_map.hpp"
#include "udgcp/plane.hpp"
#include "udgcp/udg.hpp"

namespace udgcp {

enum class HKind { Corner, GVertex, Cross };
enum class EKind { Side, GEdge, Diagonal, Bridge };

struct HVertexInfo {
    HKind kind = HKind::Corner;
    int g_vertex = -1;    // GVertex
    CellId corner;        // Corner
    int edge_a = -1;      // Cross: G-edge
    int edge_b = -1;      // Cross: second G-edge, or -1 for a grid side
};

/// Map sparsifier H. graph.pos is in grid space.
struct MapSparsifier {
    PlaneGraph graph;
    std::vector<HVertexInfo> info;
    std::vector<EKind> ekind;
    std::vector<int> g_edge;          // H edge -> G edge (GEdge kind) or -1
    std::vector<int> h_of_g;          // G vertex -> H vertex or -1
    std::set<CellId> region;          // cells whose four sides are in H
    std::vector<CellId> dense_cells;  // cells holding a degree >= 3 G-vertex
    int ell = 0;                      // number of degree >= 3 G-vertices
    int alpha = 5;
    int max_base_per_cell = 0;        // observed
};

MapSparsifier build_sparsifier(const UnitDiskGraph& g, const GridMap& map);

/// Pairs of non-adjacent geometric edges that meet (bridges skipped).
std::vector<std::pair<int, int>> plane_crossings(const PlaneGraph& h, const std::vector<EKind>* kinds = nullptr);

struct DanglingChain {
    std::vector<int> vertices;  // free end first, anchor last
    int anchor = -1;
};

/// Contraction of maximal degree-2 chains. Vertex ids of the result index
/// `vertices`; edge i of the result stands for the dart sequence chains[i] of
/// the source graph (from its first to its second endpoint).
struct Contracted {
    PlaneGraph graph;
    std::vector<int> vertices;             // contracted vertex -> source vertex
    std::vector<int> index_of;             // source vertex -> contracted vertex or -1
    std::vector<std::vector<int>> chains;  // contracted edge -> source darts
    std::vector<DanglingChain> dangling;
    std::vector<int> chain_of_dart;        // source dart -> contracted dart or -1
    std::vector<int> pos_in_chain;         // source dart -> index along its contracted dart
    std::vector<int> chain_of_vertex;      // source interior chain vertex -> contracted edge, else -1
    std::vector<int> dangling_of_vertex;   // source vertex -> dangling chain index, else -1
};

Contracted contract_to_h3(const PlaneGraph& h);

/// Source graph with the dangling chains removed, recovered from the contraction.
/// Returns the kept source edges, sorted.
std::vector<int> uncontract_edges(const Contracted& h3);

/// Cells incident to a grid-space point (1, 2 or 4).
std::vector<CellId> incident_cells(GPoint p);

/// c_H(v) = 1 + sum of clique weights over cells within distance alpha of a cell of v.
double h_weight_at(GPoint p, const GridMap& map, int alpha);
std::vector<double> h_weights(const PlaneGraph& h, const GridMap& map, int alpha);

/// Carrier: H plus virtual edges. Faces meeting G content are convex and inside
/// one cell; every face has a single boundary walk; the graph is connected.
struct Carrier {
    PlaneGraph graph;  // positions valid except that bridges carry no geometry
    std::vector<HVertexInfo> info;
    std::vector<EKind> ekind;
    std::vector<int> g_edge;
    std::vector<int> k_of_g;                  // G vertex -> K vertex or -1
    std::vector<char> face_traversed;         // per K face
    std::vector<CellId> face_cell;            // per traversed face
    std::map<CellId, std::vector<int>> traversed_in_cell;
    std::vector<int> face_of_point;           // G vertex (not a K vertex) -> K face
    int diagonals = 0, bridges = 0;
};

Carrier build_carrier(const MapSparsifier& h, const UnitDiskGraph& g, const GridMap& map);

/// Point-in-convex-polygon for a face walk (strict interior).
bool face_contains(const PlaneGraph& h, int face, GPoint p);

std::string sparsifier_json(const MapSparsifier& h, const GridMap& map);
std::string plane_svg(const PlaneGraph& h, const std::vector<EKind>* kinds = nullptr);

}  // namespace udgcp
