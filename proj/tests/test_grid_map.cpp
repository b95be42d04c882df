#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "udgcp/generators.hpp"
#include "udgcp/grid_map.hpp"

using namespace udgcp;

TEST(GridMap, OnePointWeightOne) {
    auto g = build_udg({{0.1, 0.1}});
    auto m = build_map(g);
    EXPECT_EQ(m.occupied.size(), 1u);
    EXPECT_DOUBLE_EQ(m.total_weight(), 1.0);
}

TEST(GridMap, ThreePointsOneCell) {
    auto g = build_udg({{0.30, 0.30}, {0.32, 0.31}, {0.31, 0.33}});
    auto m = build_map(g);
    ASSERT_EQ(m.occupied.size(), 1u);
    EXPECT_DOUBLE_EQ(m.clique_weight(m.cell_of[0]), 2.0);
}

TEST(GridMap, FarPairInTwoCells) {
    auto g = build_udg({{0.0, 0.0}, {0.99, 0.0}});
    auto m = build_map(g);
    EXPECT_FALSE(m.cell_of[0] == m.cell_of[1]);
    EXPECT_GE(cells_on_segment(m.gpos[0], m.gpos[1]).size(), 2u);
}

TEST(GridMap, CellDistance) {
    EXPECT_EQ(cell_distance({3, 4}, {3, 4}), 0);
    EXPECT_EQ(cell_distance({3, 4}, {4, 4}), 1);
    // BFS on the grid dual
    CellId a{0, 0}, b{2, 3};
    std::map<CellId, int> dist{{a, 0}};
    std::vector<CellId> q{a};
    for (std::size_t i = 0; i < q.size(); ++i) {
        CellId c = q[i];
        for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            CellId d{c.i + di, c.j + dj};
            if (std::llabs(d.i) > 4 || std::llabs(d.j) > 4 || dist.count(d)) continue;
            dist[d] = dist[c] + 1;
            q.push_back(d);
        }
    }
    EXPECT_EQ(cell_distance(a, b), dist[b]);
    EXPECT_EQ(cell_distance(a, b), 5);
}

TEST(GridMap, LatticeBall) {
    int cnt = 0;
    for (int i = -5; i <= 5; ++i)
        for (int j = -5; j <= 5; ++j)
            if (std::abs(i) + std::abs(j) <= 5) ++cnt;
    EXPECT_EQ(lattice_ball(5), cnt);
    EXPECT_EQ(lattice_ball(5), 61);
    EXPECT_EQ(default_constants().beta, 61);
    EXPECT_EQ(default_constants().kappa, 221);
}

TEST(GridMap, AxisParallelUnitEdge) {
    // unit edge from a cell centre in grid space has length sqrt(2)
    for (int k = 0; k < 50; ++k) {
        GPoint a{0.5L + 0.001L * k, 0.5L + 0.0007L * k};
        GPoint b{a.x + std::sqrt(2.0L), a.y};
        auto cs = cells_on_segment(a, b);
        EXPECT_GE(cs.size(), 2u);
        EXPECT_LE(cs.size(), 3u);
    }
}

TEST(GridMap, UnitSegmentsMeetAtMostFiveCells) {
    // sampling oracle over placements: start in the unit cell, all directions
    int worst = 0;
    const long double L = std::sqrt(2.0L);
    for (int i = 0; i < 23; ++i)
        for (int j = 0; j < 23; ++j)
            for (int k = 0; k < 180; ++k) {
                long double th = k * std::acos(-1.0L) / 90 + 0.001L;
                GPoint a{0.013L + i / 23.0L, 0.017L + j / 23.0L};
                GPoint b{a.x + L * std::cos(th), a.y + L * std::sin(th)};
                worst = std::max(worst, static_cast<int>(cells_on_segment(a, b).size()));
            }
    EXPECT_LE(worst, 5);
    EXPECT_GE(worst, 4);
}

TEST(GridMap, InvariantsOnRandomInstances) {
    for (int s = 0; s < 30; ++s) {
        auto g = build_udg(uniform_points(60, 4.0, 900 + s));
        auto m = build_map(g);
        // M1: same cell => adjacent
        for (const auto& [c, vs] : m.occupied)
            for (int a : vs)
                for (int b : vs)
                    if (a < b) EXPECT_TRUE(g.adjacent(a, b));
        // no vertex near a grid line
        for (const auto& p : m.gpos) {
            EXPECT_GT(std::fabs(p.x - std::round(p.x)), 1e-8L);
            EXPECT_GT(std::fabs(p.y - std::round(p.y)), 1e-8L);
        }
        auto k = compute_constants(m, g);
        EXPECT_GE(k.alpha, 1);
        EXPECT_LE(k.alpha, 5);
        for (auto [u, v] : g.edges) EXPECT_LE(static_cast<int>(cells_on_segment(m.gpos[u], m.gpos[v]).size()), k.alpha);
        double tw = 0;
        for (const auto& st : m.stats()) {
            EXPECT_EQ(st.clique_weight == 0, st.count == 0);
            tw += std::log2(st.count + 1.0);
        }
        EXPECT_NEAR(tw, m.total_weight(), 1e-9);
    }
}

TEST(GridMap, DeterministicOffset) {
    auto g = build_udg(uniform_points(30, 3.0, 5));
    auto a = build_map(g), b = build_map(g);
    EXPECT_EQ(a.ox, b.ox);
    EXPECT_EQ(a.oy, b.oy);
}

TEST(GridMap, CollinearTripleRejected) {
    auto g = build_udg({{0, 0}, {0.4, 0}, {0.8, 0}});
    EXPECT_THROW(build_map(g), InputError);
}
