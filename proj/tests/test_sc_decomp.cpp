#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "udgcp/generators.hpp"
#include "udgcp/sc_decomp.hpp"

using namespace udgcp;

namespace {

UnitDiskGraph instance(int n, double side, std::uint64_t seed, bool clustered) {
    return build_udg(clustered ? clustered_points(n, side, 3, 0.5, seed) : uniform_points(n, side, seed));
}

// Area leaf at a point, found by scanning every traversed face and sorting its
// corners by angle around the centroid.
int area_leaf_at(const Pipeline& p, GPoint q) {
    const PlaneGraph& K = p.k.graph;
    for (int f = 0; f < static_cast<int>(K.faces.size()); ++f) {
        if (!p.k.face_traversed[f] || !face_contains(K, f, q)) continue;
        GPoint c{0, 0};
        for (int d : K.faces[f]) c = c + K.pos[K.tail(d)];
        c = (1.0L / K.faces[f].size()) * c;
        auto ang = [&](GPoint x) { return std::atan2(static_cast<double>(x.y - c.y), static_cast<double>(x.x - c.x)); };
        double aq = ang(q);
        for (int d : K.faces[f]) {
            double a0 = ang(K.pos[K.tail(d)]), a1 = ang(K.pos[K.head(d)]);
            double span = std::remainder(a1 - a0, 2 * M_PI), off = std::remainder(aq - a0, 2 * M_PI);
            if (span < 0) span += 2 * M_PI;
            if (off < 0) off += 2 * M_PI;
            if (off < span) return p.sc.area_of_atom[p.sd.at.atom_of_dart[p.k3.chain_of_dart[d]]];
        }
    }
    return -1;
}

}  // namespace

TEST(SCDecomp, RandomPipelinesPassAudit) {
    for (int s = 0; s < 12; ++s) {
        int n = 14 + 20 * s;
        auto g = instance(n, 2.0 + std::sqrt(n) * 0.6, 500 + s, s % 3 == 2);
        auto p = build_pipeline(g);
        auto a = check_sc(p.sc, g, p.map);
        EXPECT_TRUE(a.ok()) << "seed " << s << ": " << a.detail;
        EXPECT_EQ(static_cast<int>(p.sc.nodes[p.sc.root].gverts.size()), g.n());
        EXPECT_TRUE(p.sc.nodes[p.sc.root].cut.empty());
        EXPECT_LE(p.sc.c3_cells, 2);
    }
}

TEST(SCDecomp, CutSetsMatchDefinition) {
    for (int s = 0; s < 6; ++s) {
        auto g = instance(40 + 10 * s, 4.5, 600 + s, s % 2);
        auto p = build_pipeline(g);
        const auto& sc = p.sc;
        std::vector<char> in(g.n());
        for (int t = 0; t < static_cast<int>(sc.nodes.size()); ++t) {
            std::fill(in.begin(), in.end(), 0);
            for (int v : sc.nodes[t].gverts) in[v] = 1;
            std::vector<int> cut;
            for (int e = 0; e < g.m(); ++e) {
                auto [u, v] = g.edges[e];
                if (!in[u] && !in[v]) continue;
                bool leaves = false;
                for (int l : sc.traces[e].leaves) leaves = leaves || !sc.in_subtree(l, t);
                if (leaves) cut.push_back(e);
            }
            ASSERT_EQ(cut, sc.nodes[t].cut) << "node " << t;
        }
    }
}

TEST(SCDecomp, WidthFromRawGeometry) {
    for (int s = 0; s < 6; ++s) {
        auto g = instance(60 + 30 * s, 5, 700 + s, s % 2);
        auto p = build_pipeline(g);
        std::map<CellId, int> count;
        std::vector<CellId> cell(g.n());
        for (int v = 0; v < g.n(); ++v) {
            cell[v] = cell_at(p.map.to_grid(g.points[v]));
            ++count[cell[v]];
        }
        double w = 0;
        for (const auto& nd : p.sc.nodes) {
            std::set<CellId> cs;
            for (int e : nd.cut) cs.insert(cell[g.edges[e].first]), cs.insert(cell[g.edges[e].second]);
            double x = 0;
            for (const auto& c : cs) x += std::log2(count[c] + 1.0);
            w = std::max(w, x);
        }
        EXPECT_NEAR(w, p.sc.width, 1e-9);
        EXPECT_NEAR(width_of(p.sc, p.map, g), p.sc.width, 1e-9);
    }
}

TEST(SCDecomp, TracesFollowSampledSegments) {
    for (int s = 0; s < 5; ++s) {
        auto g = instance(80, 4, 800 + s, s % 2);
        auto p = build_pipeline(g);
        for (int e = 0; e < g.m(); ++e) {
            auto [u, v] = g.edges[e];
            if (g.degree(u) <= 2 && g.degree(v) <= 2) continue;
            const auto& tr = p.sc.traces[e].leaves;
            GPoint a = p.map.gpos[u], b = p.map.gpos[v];
            std::size_t at = 0;
            for (int i = 1; i < 400; ++i) {
                int leaf = area_leaf_at(p, a + (i / 400.0L) * (b - a));
                if (leaf < 0) continue;  // on a carrier edge
                while (at < tr.size() && tr[at] != leaf) ++at;
                ASSERT_LT(at, tr.size()) << "edge " << e << " sample " << i << " in leaf " << leaf << " out of order";
            }
        }
    }
}

TEST(SCDecomp, TriangleAcrossTwoCells) {
    // three low vertices; every edge is carried by H
    auto g = build_udg({{0.1, 0.1}, {0.9, 0.2}, {0.5, 0.8}});
    auto p = build_pipeline(g);
    ASSERT_EQ(p.h.ell, 0);
    std::set<CellId> cells(p.map.cell_of.begin(), p.map.cell_of.end());
    for (int e = 0; e < g.m(); ++e) {
        const auto& tr = p.sc.traces[e].leaves;
        // endpoint leaves, and between them only edge leaves of the edge's own pieces
        for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
            int ke = p.sc.nodes[tr[i]].k_edge;
            ASSERT_GE(ke, 0);
            EXPECT_EQ(p.k.g_edge[ke], e);
        }
        std::set<int> own;
        for (int ke = 0; ke < p.k.graph.m(); ++ke)
            if (p.k.g_edge[ke] == e) own.insert(p.sc.leaf_of_kedge[ke]);
        for (int l : own) EXPECT_NE(std::find(tr.begin(), tr.end(), l), tr.end());
    }
    auto a = check_sc(p.sc, g, p.map);
    EXPECT_TRUE(a.ok()) << a.detail;
    // a leaf holding one vertex cuts exactly the edges whose trace leaves it
    for (int v = 0; v < 3; ++v) {
        int leaf = p.sc.leaf_of_g[v];
        for (int e = 0; e < g.m(); ++e) {
            bool inc = g.edges[e].first == v || g.edges[e].second == v;
            bool cut = std::binary_search(p.sc.nodes[leaf].cut.begin(), p.sc.nodes[leaf].cut.end(), e);
            if (!inc) continue;
            bool stays = p.sc.traces[e].leaves.size() == 1;
            EXPECT_EQ(cut, !stays);
        }
    }
}

TEST(SCDecomp, SingleVertexAndPath) {
    auto one = build_pipeline(build_udg({{0.3, 0.3}}));
    EXPECT_TRUE(check_sc(one.sc, one.g, one.map).ok());
    EXPECT_EQ(one.sc.width, 0);
    auto path = build_pipeline(build_udg({{0, 0}, {0.9, 0}, {1.8, 0.1}, {2.6, 0.3}}));
    EXPECT_TRUE(check_sc(path.sc, path.g, path.map).ok());
}
