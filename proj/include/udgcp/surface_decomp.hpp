#pragma once

#include <string>
#include <vector>

#include "udgcp/cycle_separator.hpp"
#include "udgcp/plane.hpp"

namespace udgcp {

struct SurfaceOptions {
    int base_threshold = 64;   // pieces with fewer H-vertices are peeled atom by atom
    int rank_threshold = 100;  // hole separator above this rank
    bool record_ranks = false; // rank of every node (costly; audits only)
};

enum class SplitRule { Leaf, VertexSeparator, HoleSeparator, Binarize, BasePeel, FallbackPeel };
const char* split_rule_name(SplitRule r);

/// Pieces are sets of atoms: faces of the aux triangulation of the host. The
/// atom of an original dart d is the triangle (aux, tail d, head d); an original
/// edge e is taken to lie inside the atom of dart 2e, so a piece boundary meets
/// the host only at vertices.
struct SDNode {
    std::vector<int> atoms;  // sorted
    int parent = -1, left = -1, right = -1, depth = 0;
    std::vector<int> boundary;  // host vertices on the piece boundary
    double weight = 0;          // sum of c over boundary
    int rank = -1;              // set for separator nodes (and all with record_ranks)
    SplitRule rule = SplitRule::Leaf;
    std::string stop;  // leaf stopping rule
};

struct SurfaceDecomposition {
    AuxTriangulation at;  // empty tri when the host has no edge
    std::vector<SDNode> nodes;
    int root = 0;
    double width = 0;
    int max_depth = 0;
    int separator_calls = 0, hole_calls = 0, fallback_peels = 0, sequence_cycles = 0;
    bool single_vertex = false;  // host without edges: one leaf, no atoms
};

/// Piece closed into a sphere: vertices at pinch points are split per fan and
/// every boundary circle gets a cone vertex.
struct LocalSphere {
    PlaneGraph g;
    std::vector<int> host_vertex;  // -1 for cone vertices
    std::vector<int> host_dart;    // local edge -> aux-triangulation dart with face in the piece, -1 for cone spokes
    int cones = 0;
};

LocalSphere local_sphere(const AuxTriangulation& at, const std::vector<int>& atoms, bool hole_weights);

struct SeparatorCall {
    Noose noose;
    CycleSeparatorResult cycle;
    std::vector<Piece> parts;  // edge-connected components after cutting
};

/// Balanced cycle on the local sphere with b = c on host vertices.
SeparatorCall vertex_separator(const AuxTriangulation& at, const std::vector<int>& atoms);
/// Balanced cycle on the local sphere with b = 1 on the hole cones.
SeparatorCall hole_separator(const AuxTriangulation& at, const std::vector<int>& atoms);

/// host: connected finalized plane graph with c weights (>= 1).
SurfaceDecomposition build_surface_decomposition(const PlaneGraph& host, const SurfaceOptions& opt = {});

/// Host vertices in the closure of a piece and original edges owned by it.
int piece_host_vertices(const SurfaceDecomposition& sd, const std::vector<int>& atoms);
int piece_host_edges(const SurfaceDecomposition& sd, const std::vector<int>& atoms);

struct SurfaceAudit {
    bool binary = true, a1 = true, a2 = true, a3 = true, holes_alternate = true;
    std::string detail;
    bool ok() const { return binary && a1 && a2 && a3 && holes_alternate; }
};
SurfaceAudit check_surface(const SurfaceDecomposition& sd);

std::string surface_json(const SurfaceDecomposition& sd);

}  // namespace udgcp
