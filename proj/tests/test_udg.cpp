#include <gtest/gtest.h>

#include "udgcp/generators.hpp"
#include "udgcp/udg.hpp"

using namespace udgcp;

TEST(Udg, UnitDistanceIsAnEdge) {
    auto g = build_udg({{0, 0}, {1, 0}, {2.0000001, 0}, {0, -1}});
    EXPECT_TRUE(g.adjacent(0, 1));
    EXPECT_FALSE(g.adjacent(1, 2));
    EXPECT_TRUE(g.adjacent(0, 3));
    EXPECT_FALSE(g.adjacent(1, 3));  // sqrt 2
    EXPECT_EQ(g.edge_id(3, 0), g.edge_id(0, 3));
    EXPECT_EQ(g.edge_id(0, 2), -1);
}

TEST(Udg, DuplicatePointsRejected) {
    EXPECT_THROW(build_udg({{0.5, 0.5}, {1, 1}, {0.5, 0.5}}), InputError);
}

TEST(Udg, AdjacencyMatchesBruteForce) {
    for (int s = 0; s < 20; ++s) {
        auto pts = uniform_points(60, 4, 10 + s);
        auto g = build_udg(pts);
        int m = 0;
        for (int i = 0; i < g.n(); ++i)
            for (int j = i + 1; j < g.n(); ++j) {
                double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
                bool e = dx * dx + dy * dy <= 1;
                m += e;
                EXPECT_EQ(g.adjacent(i, j), e);
            }
        EXPECT_EQ(g.m(), m);
    }
}

TEST(Udg, CrossingsMatchNaive) {
    for (int s = 0; s < 15; ++s) {
        auto g = build_udg(uniform_points(80, 5, 200 + s));
        auto a = find_crossings(g), b = find_crossings_naive(g);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].edge_a, b[i].edge_a);
            EXPECT_EQ(a[i].edge_b, b[i].edge_b);
        }
    }
}

TEST(Udg, IcfHoldsOnUnitDiskGraphs) {
    for (int s = 0; s < 30; ++s) {
        auto g = build_udg(s % 2 ? uniform_points(120, 5, 300 + s) : clustered_points(120, 6, 4, 0.5, 300 + s));
        EXPECT_TRUE(check_icf(g).ok);
    }
}

TEST(Udg, IcfFailsOnLongCrossingEdges) {
    // two long crossing segments with no triangle among their ends
    auto g = UnitDiskGraph::from_edges({{0, 0}, {4, 0}, {2, -2}, {2, 2}}, {{0, 1}, {2, 3}});
    auto rep = check_icf(g);
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.violations.size(), 1u);
}

TEST(Generators, Deterministic) {
    EXPECT_EQ(uniform_points(30, 3, 5).size(), 30u);
    auto a = uniform_points(30, 3, 5), b = uniform_points(30, 3, 5), c = uniform_points(30, 3, 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].x, b[i].x);
        EXPECT_EQ(a[i].y, b[i].y);
        EXPECT_GE(a[i].x, 0);
        EXPECT_LE(a[i].x, 3);
    }
    EXPECT_NE(a[0].x, c[0].x);
}
