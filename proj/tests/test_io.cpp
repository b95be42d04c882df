#include <gtest/gtest.h>

#include <sstream>

#include "udgcp/generators.hpp"
#include "udgcp/io.hpp"

using namespace udgcp;

TEST(PointsCsv, RoundTripIsExact) {
    auto pts = uniform_points(50, 3.7, 12);
    std::stringstream s;
    write_points_csv(s, pts);
    EXPECT_EQ(read_points_csv(s), pts);
}

TEST(PointsCsv, SkipsHeaderCommentsBlanks) {
    std::istringstream s("x,y\n# note\n\n 1.5 , -2\n3,4\r\n");
    auto p = read_points_csv(s);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0], (Point{1.5, -2}));
    EXPECT_EQ(p[1], (Point{3, 4}));
}

TEST(PointsCsv, DiagnosticsNameTheLine) {
    auto msg = [](const std::string& text) {
        std::istringstream s(text);
        try {
            read_points_csv(s, "f.csv");
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(msg("0,0\n1\n").find("f.csv:2"), std::string::npos);
    EXPECT_NE(msg("0,0\n\n1,2,3\n").find("f.csv:3"), std::string::npos);
    EXPECT_NE(msg("0,nan\n").find("f.csv:1"), std::string::npos);
    EXPECT_NE(msg("0,0\nx,y\n").find("f.csv:2"), std::string::npos);  // header only first
}

TEST(CyclesJson, CertificateOrArray) {
    std::istringstream a(R"({"k": 1, "cycles": [[0, 1, 2]]})"), b("[[3,4,5],[6,7,8]]");
    EXPECT_EQ(read_cycles_json(a), (std::vector<Cycle>{{0, 1, 2}}));
    EXPECT_EQ(read_cycles_json(b).size(), 2u);
    std::istringstream c("[[0, \"a\"]]"), d("{\"k\": 1}"), e("[[0,1");
    EXPECT_THROW(read_cycles_json(c), InputError);
    EXPECT_THROW(read_cycles_json(d), InputError);
    EXPECT_THROW(read_cycles_json(e), InputError);
}

TEST(Parallel, EveryIndexOnce) {
    std::vector<int> hit(1000, 0);
    parallel_for(1000, 4, [&](int i) { hit[i] += 1; });
    for (int h : hit) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](int i) { if (i == 7) throw InputError("x"); }), InputError);
}
