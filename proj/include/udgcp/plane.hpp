#pragma once

#include <array>
#include <utility>
#include <vector>

#include "udgcp/common.hpp"
#include "udgcp/geometry.hpp"

namespace udgcp {

/// Plane multigraph as a rotation system. Edge e has darts 2e (first->second)
/// and 2e+1. rot[v] lists outgoing darts counterclockwise; the face to the left
/// of dart d continues with next(d) = rot_prev(twin(d)).
struct PlaneGraph {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> rot;
    std::vector<GPoint> pos;  // optional, empty when purely combinatorial
    std::vector<double> c, b; // cycle weight, balance weight

    // derived by finalize()
    std::vector<int> rpos;                // index of each dart in rot[tail]
    std::vector<int> dface;               // face (walk) id of each dart
    std::vector<std::vector<int>> faces;  // dart walks

    int n() const { return static_cast<int>(rot.size()); }
    int m() const { return static_cast<int>(edges.size()); }
    static int twin(int d) { return d ^ 1; }
    static int edge_of(int d) { return d >> 1; }
    int tail(int d) const { return (d & 1) ? edges[d >> 1].second : edges[d >> 1].first; }
    int head(int d) const { return (d & 1) ? edges[d >> 1].first : edges[d >> 1].second; }
    int rot_next(int d) const;
    int rot_prev(int d) const;
    int next(int d) const { return rot_prev(twin(d)); }
    int degree(int v) const { return static_cast<int>(rot[v].size()); }

    int add_vertex(GPoint p = {}, double cw = 1, double bw = 0);
    /// New edge u-v whose dart at u goes right after dart au (ccw), and at v right
    /// after dart av; -1 when the vertex has no darts. Returns the edge id.
    int add_edge(int u, int au, int v, int av);
    void finalize();

    std::vector<int> neighbours(int v) const;
    int components() const;
    bool is_connected() const { return components() <= 1; }
    bool triangulated() const;  // finalized, connected, every face a 3-walk, no loops
    /// Euler characteristic check per connected component: V - E + F = 2.
    bool euler_ok() const;

    /// Closed surface from ccw triangles; tri_edges[i][k] is the edge joining
    /// tris[i][k] and tris[i][(k+1)%3] (each edge used by exactly two sides).
    static PlaneGraph from_triangles(int n, const std::vector<std::array<int, 3>>& tris,
                                     const std::vector<std::array<int, 3>>& tri_edges, int m);
    /// Same, for simple triangulations: edges are identified by their endpoints.
    static PlaneGraph from_triangles(int n, const std::vector<std::array<int, 3>>& tris);

    /// Rotation from coordinates: outgoing darts sorted by angle.
    static PlaneGraph from_coords(std::vector<GPoint> pts, std::vector<std::pair<int, int>> edges);
};

struct AuxTriangulation {
    PlaneGraph tri;
    int original_n = 0;               // vertices [0, original_n) are original
    std::vector<int> aux_of_face;     // original face id -> aux vertex
    std::vector<int> face_of_aux;     // aux index (v - original_n) -> original face
    std::vector<int> atom_dart;       // per tri face: original dart it came from
    std::vector<int> atom_of_dart;    // original dart -> tri face
    std::vector<int> spoke_of_dart;   // original dart -> spoke edge from its face's aux vertex to its tail
};

/// One auxiliary vertex inside every face joined to every corner of the face walk.
/// Requires a connected, finalized graph with at least one edge.
AuxTriangulation triangulate_with_aux(const PlaneGraph& h, double aux_b = 0);

/// Curve meeting the host only at vertices: segment i runs through face
/// faces[i] from vertices[i] to the next listed vertex (cyclically). Over a
/// triangulation, crossing face F between two of its corners is the same as
/// cutting along that side of F. Arcs through regions outside the piece are
/// simply omitted, so `open_after[i]` marks a segment followed by such an arc.
struct Noose {
    std::vector<int> vertices;
    std::vector<int> faces;
    std::vector<char> open_after;  // optional; same length as vertices when used
};

/// Region made of whole faces of a triangulated host.
struct Piece {
    std::vector<int> faces;  // sorted
    int rank = 0;
};

std::vector<char> face_mask(const PlaneGraph& h, const std::vector<int>& faces);
/// Number of complement components under edge adjacency.
int piece_rank(const PlaneGraph& h, const std::vector<char>& in);
/// Faces are connected through shared edges.
bool piece_connected(const PlaneGraph& h, const std::vector<int>& faces);
/// Vertices incident to a face inside and a face outside.
std::vector<int> piece_boundary(const PlaneGraph& h, const std::vector<char>& in);
Piece make_piece(const PlaneGraph& h, std::vector<int> faces);

/// Splits a piece along a noose. Throws InputError if the noose leaves the piece
/// or a face does not hold its two listed vertices.
std::vector<Piece> cut_piece(const PlaneGraph& h, const Piece& a, const Noose& noose, bool with_rank = true);

}  // namespace udgcp
