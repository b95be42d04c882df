#include <gtest/gtest.h>

#include <cmath>
#include <queue>
#include <set>

#include "udgcp/cycle_separator.hpp"
#include "udgcp/generators.hpp"

using namespace udgcp;

namespace {

PlaneGraph octahedron() {
    // vertices: 0 top, 5 bottom, ring 1..4
    std::vector<std::array<int, 3>> t{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                      {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
    auto g = PlaneGraph::from_triangles(6, t);
    g.c.assign(6, 1);
    g.b.assign(6, 1);
    return g;
}

// Dijkstra on the split-vertex digraph: v_in -> v_out costs c(v).
std::vector<double> split_dijkstra(const PlaneGraph& h, int root) {
    int n = h.n();
    std::vector<double> dist(2 * n, INFINITY);
    using It = std::pair<double, int>;
    std::priority_queue<It, std::vector<It>, std::greater<>> pq;
    dist[2 * root] = 0;
    pq.push({0, 2 * root});
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x]) continue;
        int v = x / 2;
        if (x % 2 == 0) {
            if (d + h.c[v] < dist[2 * v + 1]) {
                dist[2 * v + 1] = d + h.c[v];
                pq.push({dist[2 * v + 1], 2 * v + 1});
            }
        } else {
            for (int w : h.neighbours(v))
                if (d < dist[2 * w]) {
                    dist[2 * w] = d;
                    pq.push({d, 2 * w});
                }
        }
    }
    std::vector<double> out(n);
    for (int v = 0; v < n; ++v) out[v] = dist[2 * v + 1];
    return out;
}

}  // namespace

TEST(LevelTree, PathGraphUnitWeights) {
    PlaneGraph g;
    g.rot.assign(3, {});
    g.add_edge(0, -1, 1, -1);
    g.add_edge(1, 1, 2, -1);
    g.c.assign(3, 1);
    g.finalize();
    auto lt = build_level_tree(g, 0);
    EXPECT_EQ(lt.lv, (std::vector<double>{1, 2, 3}));
}

TEST(LevelTree, StarHeavyCentre) {
    PlaneGraph g;
    g.rot.assign(4, {});
    g.add_edge(0, -1, 1, -1);
    g.add_edge(0, 0, 2, -1);
    g.add_edge(0, 2, 3, -1);
    g.c = {5, 1, 1, 1};
    g.finalize();
    auto lt = build_level_tree(g, 1);
    EXPECT_EQ(lt.lv[0], 6);
    EXPECT_EQ(lt.lv[2], 7);
    EXPECT_EQ(lt.lv[3], 7);
}

TEST(LevelTree, MatchesSplitVertexDijkstraAndTelescopes) {
    for (int s = 0; s < 20; ++s) {
        auto g = random_triangulation(60, 100 + s, 1, 4);
        auto lt = build_level_tree(g, 0);
        auto ref = split_dijkstra(g, 0);
        for (int v = 0; v < g.n(); ++v) {
            EXPECT_NEAR(lt.lv[v], ref[v], 1e-9);
            if (v != lt.root) EXPECT_NEAR(lt.lv[lt.parent[v]] + g.c[v], lt.lv[v], 1e-9);
        }
        EXPECT_EQ(lt.lv[0], g.c[0]);
    }
}

TEST(FundamentalCycle, OctahedronBalanced) {
    auto g = octahedron();
    auto lt = build_level_tree(g, 0);
    auto r = fundamental_cycle_separator(g, lt);
    EXPECT_TRUE(is_simple_cycle(g, r.cycle, r.cycle_edges));
    EXPECT_LE(r.balance_ratio * 6, 4.0 + 1e-12);
}

TEST(FundamentalCycle, K4) {
    auto g = PlaneGraph::from_triangles(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
    g.b.assign(4, 1);
    auto lt = build_level_tree(g, 0);
    auto r = fundamental_cycle_separator(g, lt);
    EXPECT_EQ(r.cycle.size(), 3u);
    EXPECT_LE(r.balance_ratio, 2.0 / 3.0);
}

TEST(FundamentalCycle, WheelHubZeroBalance) {
    // hub 0, rim 1..6, plus apex 7 closing the outside
    std::vector<std::array<int, 3>> t;
    for (int i = 1; i <= 6; ++i) {
        int j = i % 6 + 1;
        t.push_back({0, i, j});
        t.push_back({7, j, i});
    }
    auto g = PlaneGraph::from_triangles(8, t);
    g.b = {0, 1, 1, 1, 1, 1, 1, 0};
    auto lt = build_level_tree(g, 1);
    auto r = fundamental_cycle_separator(g, lt);
    EXPECT_LE(r.balance_ratio, 2.0 / 3.0 + 1e-12);
}

TEST(Separator, SingleTriangleFace) {
    auto g = PlaneGraph::from_triangles(3, {{0, 1, 2}, {0, 2, 1}});
    g.b.assign(3, 1);
    auto r = balanced_small_separator(g);
    EXPECT_EQ(r.cycle.size(), 3u);
    EXPECT_EQ(r.weight, 3);
    EXPECT_LE(r.weight, 10 * std::sqrt(3.0));
}

TEST(Separator, HeavyVertexFaceShortcut) {
    auto g = random_triangulation(80, 7, 1, 3);
    g.b.assign(g.n(), 1);
    g.b[17] = 20;
    auto r = balanced_small_separator(g);
    EXPECT_EQ(r.kind, "face");
    double mx = *std::max_element(g.c.begin(), g.c.end());
    EXPECT_LE(r.weight, 3 * mx);
    EXPECT_TRUE(std::find(r.cycle.begin(), r.cycle.end(), 17) != r.cycle.end());
}

TEST(Separator, AuditOnRandomTriangulations) {
    for (int s = 0; s < 20; ++s) {
        auto g = random_triangulation(200, 500 + s, 1, 4);
        auto r = balanced_small_separator(g);
        EXPECT_TRUE(is_simple_cycle(g, r.cycle, r.cycle_edges));
        EXPECT_LE(r.balance_ratio, 8.0 / 9.0);
        EXPECT_LE(r.weight, 10 * cstar_of(g));
        EXPECT_NEAR(r.balance_ratio, balance_ratio_of(g, r.cycle), 1e-12);
    }
}

TEST(CycleSequence, LongTubeBuildsSequence) {
    auto g = triangulated_tube(1200, 3);
    auto lt = build_level_tree(g, 0);
    auto s = fundamental_cycle_separator(g, lt);
    double cs = cstar_of(g);
    ASSERT_GT(s.weight, 8 * cs);
    auto seq = build_cycle_sequence(g, lt, s);
    ASSERT_FALSE(seq.cycles.empty());
    double total = 0;
    std::set<int> seen;
    for (std::size_t i = 0; i < seq.cycles.size(); ++i) {
        EXPECT_LE(seq.weights[i], cs);
        total += seq.weights[i];
        for (int v : seq.cycles[i]) EXPECT_TRUE(seen.insert(v).second) << "cycles share vertex " << v;
        EXPECT_TRUE(is_simple_cycle(g, seq.cycles[i], seq.cycle_edges[i]));
    }
    EXPECT_LE(total, cs);
    EXPECT_EQ(seq.level_violations, 0);
    auto r = balanced_small_separator(g);
    EXPECT_TRUE(is_simple_cycle(g, r.cycle, r.cycle_edges));
    EXPECT_LE(r.balance_ratio, 8.0 / 9.0);
    EXPECT_LE(r.weight, 10 * cs);
    EXPECT_FALSE(r.fallback);
}

TEST(CycleSequence, ShortCycleBypassesSequence) {
    auto g = random_triangulation(100, 3);
    auto lt = build_level_tree(g, 0);
    auto s = fundamental_cycle_separator(g, lt);
    EXPECT_LE(s.weight, 8 * cstar_of(g));
    auto r = balanced_small_separator(g);
    EXPECT_EQ(r.kind, "fundamental");
}
