#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "udgcp/generators.hpp"
#include "udgcp/surface_decomp.hpp"

using namespace udgcp;

namespace {

// Random connected plane graph: a triangulation with random edges dropped.
PlaneGraph thinned(int n, std::uint64_t seed, double keep) {
    PlaneGraph t = random_triangulation(n, seed, 1, 4);
    std::mt19937_64 rng(seed * 7 + 1);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<char> kept(t.m(), 1);
    // drop edges whose removal keeps the graph connected
    for (int e = 0; e < t.m(); ++e) {
        if (U(rng) < keep) continue;
        kept[e] = 0;
        std::vector<int> seen(t.n(), 0), st{0};
        seen[0] = 1;
        int cnt = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int d : t.rot[v]) {
                if (!kept[PlaneGraph::edge_of(d)]) continue;
                int w = t.head(d);
                if (!seen[w]) seen[w] = 1, ++cnt, st.push_back(w);
            }
        }
        if (cnt != t.n()) kept[e] = 1;
    }
    PlaneGraph g;
    std::vector<int> eid(t.m(), -1);
    for (int e = 0; e < t.m(); ++e)
        if (kept[e]) {
            eid[e] = g.m();
            g.edges.push_back(t.edges[e]);
        }
    g.rot.resize(t.n());
    for (int v = 0; v < t.n(); ++v)
        for (int d : t.rot[v])
            if (kept[d >> 1]) g.rot[v].push_back(2 * eid[d >> 1] + (d & 1));
    g.c = t.c;
    g.b = t.b;
    g.finalize();
    return g;
}

struct DSU {
    std::map<long long, long long> p;
    long long find(long long x) {
        if (!p.count(x)) p[x] = x;
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(long long a, long long b) { p[find(a)] = find(b); }
};

// Independent count of boundary circles: corners (face, vertex) glue into fans
// across inside edges at the vertex; boundary sides join fans; each component
// of that side graph is one circle.
int boundary_circles(const AuxTriangulation& at, const std::vector<int>& atoms) {
    const PlaneGraph& t = at.tri;
    std::vector<char> in(t.faces.size(), 0);
    for (int f : atoms) in[f] = 1;
    auto corner = [&](int f, int v) { return static_cast<long long>(f) * t.n() + v; };
    DSU fans;
    for (int f : atoms)
        for (int d : t.faces[f]) {
            int g = t.dface[d ^ 1];
            if (!in[g]) continue;
            for (int v : {t.tail(d), t.head(d)}) fans.unite(corner(f, v), corner(g, v));
        }
    DSU sides;
    std::set<long long> used;
    for (int f : atoms)
        for (int d : t.faces[f]) {
            if (in[t.dface[d ^ 1]]) continue;
            long long a = fans.find(corner(f, t.tail(d))), b = fans.find(corner(f, t.head(d)));
            sides.unite(a, b);
            used.insert(a);
            used.insert(b);
        }
    std::set<long long> roots;
    for (long long x : used) roots.insert(sides.find(x));
    return static_cast<int>(roots.size());
}

}  // namespace

TEST(SurfaceDecomp, SingleEdgeIsOneLeaf) {
    PlaneGraph g = PlaneGraph::from_coords({{0, 0}, {1, 0}}, {{0, 1}});
    g.c = {1, 1};
    auto sd = build_surface_decomposition(g);
    ASSERT_EQ(sd.nodes.size(), 1u);
    EXPECT_EQ(sd.nodes[0].rule, SplitRule::Leaf);
    EXPECT_TRUE(sd.nodes[0].boundary.empty());
    EXPECT_TRUE(check_surface(sd).ok());
}

TEST(SurfaceDecomp, SingleVertex) {
    PlaneGraph g;
    g.add_vertex({0, 0}, 1, 0);
    g.finalize();
    auto sd = build_surface_decomposition(g);
    EXPECT_TRUE(sd.single_vertex);
    EXPECT_EQ(sd.nodes.size(), 1u);
}

TEST(SurfaceDecomp, TriangleWidthAtMostTotal) {
    PlaneGraph g = PlaneGraph::from_coords({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
    g.c = {2, 3, 5};
    auto sd = build_surface_decomposition(g);
    auto a = check_surface(sd);
    EXPECT_TRUE(a.ok()) << a.detail;
    EXPECT_GT(sd.nodes.size(), 1u);
    EXPECT_LE(sd.width, 10.0);
    for (const auto& nd : sd.nodes)
        if (nd.left < 0) {
            EXPECT_LE(piece_host_vertices(sd, nd.atoms), 2);
        }
}

TEST(SurfaceDecomp, LocalSphereIsSphere) {
    PlaneGraph g = thinned(120, 5, 0.5);
    auto at = triangulate_with_aux(g);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        // grow a random connected piece
        int F = static_cast<int>(at.tri.faces.size());
        std::vector<char> in(F, 0);
        std::vector<int> atoms{static_cast<int>(rng() % F)};
        in[atoms[0]] = 1;
        int target = 1 + static_cast<int>(rng() % (F - 1));
        while (static_cast<int>(atoms.size()) < target) {
            int f = atoms[rng() % atoms.size()];
            int g2 = at.tri.dface[at.tri.faces[f][rng() % 3] ^ 1];
            if (!in[g2]) in[g2] = 1, atoms.push_back(g2);
        }
        std::sort(atoms.begin(), atoms.end());
        for (bool hole : {false, true}) {
            auto ls = local_sphere(at, atoms, hole);
            EXPECT_TRUE(ls.g.triangulated());
            EXPECT_TRUE(ls.g.euler_ok());
            EXPECT_EQ(ls.cones, boundary_circles(at, atoms));
            // every host corner of the piece appears, split at pinch points only
            std::set<int> host;
            for (int v : ls.host_vertex)
                if (v >= 0) host.insert(v);
            std::set<int> corners;
            for (int f : atoms)
                for (int d : at.tri.faces[f]) corners.insert(at.tri.tail(d));
            EXPECT_EQ(host, corners);
        }
    }
}

TEST(SurfaceDecomp, RandomHostsSatisfyA1A2A3) {
    for (int s = 0; s < 12; ++s) {
        PlaneGraph g = thinned(150 + 40 * s, 100 + s, s % 2 ? 0.4 : 0.8);
        SurfaceOptions opt;
        opt.base_threshold = 16;
        auto sd = build_surface_decomposition(g, opt);
        auto a = check_surface(sd);
        EXPECT_TRUE(a.ok()) << a.detail;
        EXPECT_GT(sd.separator_calls, 0);
        double w2 = 0, tot = 0;
        for (double c : g.c) w2 += c * c, tot += c;
        // cycle-weight width stays well below the total weight on large hosts
        EXPECT_LT(sd.width, tot);
        EXPECT_LE(sd.max_depth, 40 * std::log2(g.n()));
    }
}

TEST(SurfaceDecomp, HoleSeparatorsNeverConsecutive) {
    // many holes: a triangulated grid with most faces removed
    PlaneGraph g = thinned(400, 77, 0.45);
    SurfaceOptions opt;
    opt.rank_threshold = 3;
    opt.base_threshold = 12;
    opt.record_ranks = true;
    auto sd = build_surface_decomposition(g, opt);
    auto a = check_surface(sd);
    EXPECT_TRUE(a.ok()) << a.detail;
    EXPECT_GT(sd.hole_calls, 0);
}

TEST(SurfaceDecomp, HoleSeparatorBalancesRank) {
    PlaneGraph g = thinned(500, 91, 0.5);
    auto at = triangulate_with_aux(g);
    std::vector<int> all(at.tri.faces.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    // pick a piece with many holes: drop every atom of a spread of original faces
    std::vector<char> drop(at.tri.faces.size(), 0);
    int holes = 0;
    for (int f = 0; f < static_cast<int>(g.faces.size()); f += 3) {
        for (int d : g.faces[f]) drop[at.atom_of_dart[d]] = 1;
        ++holes;
    }
    std::vector<int> kept;
    for (int f : all)
        if (!drop[f]) kept.push_back(f);
    // largest edge-connected component
    auto comps = cut_piece(at.tri, Piece{kept, 0}, Noose{}, false);
    std::vector<int> atoms;
    for (const auto& p : comps)
        if (p.faces.size() > atoms.size()) atoms = p.faces;
    ASSERT_TRUE(piece_connected(at.tri, atoms));
    auto in = face_mask(at.tri, atoms);
    int rank = piece_rank(at.tri, in);
    ASSERT_GT(rank, 20);
    auto call = hole_separator(at, atoms);
    ASSERT_GE(call.parts.size(), 2u);
    for (const auto& p : call.parts) {
        int r = piece_rank(at.tri, face_mask(at.tri, p.faces));
        // holes of each side plus the new outside region
        EXPECT_LE(r, 8.0 / 9.0 * rank + 1 + 1e-9);
    }
}

TEST(SurfaceDecomp, VertexSeparatorDumbbell) {
    // two heavy triangulated blobs joined by a thin path
    PlaneGraph g = thinned(300, 12, 0.9);
    auto at = triangulate_with_aux(g);
    std::vector<int> all(at.tri.faces.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    auto call = vertex_separator(at, all);
    double tot = 0;
    for (int v = 0; v < g.n(); ++v) tot += g.c[v];
    ASSERT_GE(call.parts.size(), 2u);
    for (const auto& p : call.parts) {
        std::set<int> vs;
        for (int f : p.faces)
            for (int d : at.tri.faces[f])
                if (at.tri.tail(d) < g.n()) vs.insert(at.tri.tail(d));
        double s = 0;
        for (int v : vs) s += g.c[v];
        EXPECT_LE(s, 0.9 * tot);
    }
}
