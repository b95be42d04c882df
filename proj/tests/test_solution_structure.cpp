#include <gtest/gtest.h>

#include <random>
#include <set>

#include "udgcp/generators.hpp"
#include "udgcp/solution_structure.hpp"

using namespace udgcp;

TEST(Clean, TreeBecomesEmpty) {
    auto g = build_udg({{0, 0}, {0.9, 0}, {1.8, 0}, {0.9, 0.9}, {0.9, -0.9}});
    auto c = clean(g);
    EXPECT_EQ(c.g.n(), 0);
    EXPECT_EQ(c.removed.size(), 5u);
}

TEST(Clean, TriangleWithPendant) {
    auto g = build_udg({{0, 0}, {0.8, 0}, {0.4, 0.6}, {1.7, 0}});
    auto c = clean(g);
    EXPECT_EQ(c.original, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(c.g.m(), 3);
    EXPECT_EQ(c.removed, (std::vector<int>{3}));
}

TEST(Clean, KeepsOptimumAndIsIdempotent) {
    for (int s = 0; s < 40; ++s) {
        auto g = build_udg(uniform_points(12, 3.0, 900 + s));
        auto c = clean(g);
        for (int v = 0; v < c.g.n(); ++v) EXPECT_GE(c.g.degree(v), 2);
        EXPECT_EQ(max_cycle_packing(g.adj).value, max_cycle_packing(c.g.adj).value);
        auto c2 = clean(c.g);
        EXPECT_EQ(c2.g.n(), c.g.n());
        EXPECT_TRUE(c2.removed.empty());
    }
}

TEST(FiveColour, ProperOnDualsAndTriangulations) {
    for (int s = 0; s < 20; ++s) {
        auto t = random_triangulation(30 + 20 * s, 40 + s);
        AdjList adj(t.n());
        for (auto [u, v] : t.edges) adj[u].push_back(v), adj[v].push_back(u);
        auto col = five_colour(adj);
        for (int v = 0; v < t.n(); ++v) {
            EXPECT_GE(col[v], 0);
            EXPECT_LT(col[v], 5);
            for (int w : adj[v]) EXPECT_NE(col[v], col[w]);
        }
    }
}

TEST(FiveColour, RejectsK6) {
    AdjList k6(6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) k6[i].push_back(j);
    EXPECT_THROW(five_colour(k6), InvariantError);
}

TEST(DenseExtract, DisjointTrianglesAmongNoise) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) {
        double x = 5.0 * i;
        // K4 drawn as a square: its diagonals cross
        pts.push_back({x, 0});
        pts.push_back({x + 0.5, 0});
        pts.push_back({x + 0.5, 0.5});
        pts.push_back({x, 0.5});
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 25);
    for (int i = 0; i < 10; ++i) pts.push_back({u(rng), 30 + u(rng)});
    auto g = build_udg(pts);
    auto r = dense_extract(g, 5, {0.5, 61});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->cycles.size(), 5u);
    EXPECT_EQ(r->harvested, 5);
    EXPECT_TRUE(verify_solution(g.adj, r->cycles));
}

TEST(DenseExtract, PlanarGridUsesFaces) {
    // square lattice of spacing 0.9: plane, no crossings, every face a 4-cycle
    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) pts.push_back({0.9 * i, 0.9 * j});
    auto g = build_udg(pts);
    ASSERT_TRUE(find_crossings(g).empty());
    auto r = dense_extract(g, 3, {1.0, 61});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->harvested, 0);
    EXPECT_EQ(r->faces, 3);
    EXPECT_TRUE(verify_solution(g.adj, r->cycles));
}

TEST(DenseExtract, BelowThresholdReturnsNone) {
    auto g = build_udg(uniform_points(60, 4, 11));
    EXPECT_FALSE(dense_extract(g, 2).has_value());  // default threshold is far above 60
    int heavy = 0;
    for (int v = 0; v < g.n(); ++v) heavy += g.degree(v) >= 3;
    EXPECT_FALSE(dense_extract(g, 1, {static_cast<double>(heavy), 61}).has_value());
}

TEST(DenseExtract, RandomInstancesVerify) {
    int found = 0;
    for (int s = 0; s < 30; ++s) {
        auto g = build_udg(uniform_points(150, 6, 70 + s));
        for (int k : {2, 5, 10}) {
            auto r = dense_extract(g, k, {1.0, 61});
            if (!r) continue;
            ++found;
            EXPECT_EQ(static_cast<int>(r->cycles.size()), k);
            EXPECT_TRUE(verify_solution(g.adj, r->cycles));
        }
    }
    EXPECT_GT(found, 50);
}

TEST(Packedness, Constant) {
    EXPECT_EQ(packedness_constant(MapConstants{}), 11163);
    EXPECT_EQ(packedness_constant(MapConstants{1, 1, 1}), 3);
    EXPECT_DOUBLE_EQ(dense_threshold(1), 49);
}

TEST(Packedness, InterCellLoad) {
    auto g = build_udg(uniform_points(40, 2.5, 5));
    auto map = build_map(g);
    EXPECT_EQ(inter_cell_load(map, {}), 0);
    std::vector<Cycle> cs{{0, 1, 2}, {3, 4, 5, 6}, {7, 8, 9}};
    std::map<CellId, int> load;
    for (const auto& c : cs) {
        std::set<CellId> cells;
        for (int v : c) cells.insert(map.cell_of[v]);
        if (c.size() == 3 && cells.size() == 1) continue;
        for (int v : c) ++load[map.cell_of[v]];
    }
    int want = 0;
    for (auto& [c, x] : load) want = std::max(want, x);
    EXPECT_EQ(inter_cell_load(map, cs), want);
}
