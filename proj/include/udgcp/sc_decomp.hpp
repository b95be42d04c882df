#pragma once

#include <string>
#include <vector>

#include "udgcp/grid_map.hpp"
#include "udgcp/sparsifier.hpp"
#include "udgcp/surface_decomp.hpp"
#include "udgcp/udg.hpp"

namespace udgcp {

enum class SCKind { Surface, Atom, Area, ChainEdge, DanglingEdge };
const char* sc_kind_name(SCKind k);

/// Node of the lifted tree. Surface nodes are unions of atoms (aux-triangulation
/// faces of K3); below an atom the owned chain and any dangling chains are
/// peeled edge by edge, the remainder being the atom's area leaf.
struct SCNode {
    SCKind kind = SCKind::Surface;
    int parent = -1, left = -1, right = -1, depth = 0;
    int sd_node = -1;          // Surface: node of the surface decomposition, -1 for an atom-peel step
    std::vector<int> atoms;    // Surface with sd_node < 0: its atoms
    int atom = -1;             // Atom/leaf kinds: the atom (-1: K3 is one vertex)
    int k_edge = -1;           // ChainEdge/DanglingEdge: the carrier edge
    int tin = 0, tout = 0;     // leaf interval [tin, tout)
    std::vector<int> closure;  // leaves: carrier vertices in the closure
    std::vector<int> gverts;   // V_t, sorted
    std::vector<int> cut;      // G-edges with an endpoint in V_t whose trace leaves the piece
    std::vector<int> boundary; // carrier vertices on the piece boundary
    std::vector<CellId> cells; // cells of cut-edge endpoints
    double weight = 0;         // sum of clique weights over cells
};

/// Where a trace moves from one leaf to the next. Positions refer to the aux
/// triangulation of K3: an edge crossed (position from its first endpoint, in
/// [0,1]) or a vertex passed through. Both -1 for a move inside one atom.
struct Crossing {
    double t = 0;  // along the G-edge from its first endpoint
    int tedge = -1;
    double pos = 0;
    int tvertex = -1;
};

struct EdgeTrace {
    std::vector<int> leaves;       // consecutive distinct leaves, endpoint leaves first and last
    std::vector<Crossing> between; // between[i] separates leaves[i] and leaves[i+1]
};

struct SCDecomposition {
    std::vector<SCNode> nodes;
    int root = 0;
    std::vector<int> leaf_of_g;         // G vertex -> leaf
    std::vector<int> area_of_atom;      // atom -> Area leaf
    std::vector<int> leaf_of_kedge;     // carrier edge -> edge leaf
    std::vector<int> order;             // leaves by tin
    std::vector<EdgeTrace> traces;      // per G-edge
    double width = 0;
    int c4_spread = 0;                  // max leaves holding vertices of one cell
    int c3_cells = 0;                   // max cells over the G-vertices of one leaf
    int containment_failures = 0;
    int max_depth = 0;
    bool in_subtree(int leaf, int t) const { return nodes[t].tin <= nodes[leaf].tin && nodes[leaf].tin < nodes[t].tout; }
};

struct PipelineOptions {
    std::uint64_t salt = 0;
    SurfaceOptions surface;
    bool check_containment = true;
};

/// G, its map, sparsifier H, carrier K, K3 with c_H weights, the surface
/// decomposition of K3 and the sc-decomposition of G.
struct Pipeline {
    UnitDiskGraph g;
    GridMap map;
    MapSparsifier h;
    Carrier k;
    Contracted k3;
    SurfaceDecomposition sd;
    SCDecomposition sc;
};

/// Lifted tree only (no G content).
SCDecomposition lift_to_h(const SurfaceDecomposition& sd, const Carrier& k, const Contracted& k3);
/// Places G-vertices in leaves, traces G-edges and fills V_t, cut(t), weights.
void perturb_to_sc(SCDecomposition& sc, const SurfaceDecomposition& sd, const Carrier& k, const Contracted& k3,
                   const UnitDiskGraph& g, const GridMap& map, int alpha, bool check_containment = true);

Pipeline build_pipeline(const UnitDiskGraph& g, const PipelineOptions& opt = {});

/// Max over nodes of the clique weight of the cells met by cut(t).
double width_of(const SCDecomposition& sc, const GridMap& map, const UnitDiskGraph& g);

struct SCAudit {
    bool c1 = true, c2 = true, c3 = true, c4 = true, containment = true;
    int c4_spread = 0;
    std::string detail;
    bool ok() const { return c1 && c2 && c3 && c4 && containment; }
};
SCAudit check_sc(const SCDecomposition& sc, const UnitDiskGraph& g, const GridMap& map, int c4_limit = 8);

std::string sc_json(const SCDecomposition& sc);
/// G drawn over K, vertices coloured by leaf.
std::string sc_svg(const Pipeline& p);

}  // namespace udgcp
