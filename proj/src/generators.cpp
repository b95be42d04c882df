#include "udgcp/generators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace udgcp {

std::vector<Point> uniform_points(int n, double side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, side);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({U(rng), U(rng)});
    return pts;
}

std::vector<Point> clustered_points(int n, double side, int clusters, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, side);
    std::normal_distribution<double> N(0.0, sigma);
    std::vector<Point> centres;
    for (int i = 0; i < std::max(1, clusters); ++i) centres.push_back({U(rng), U(rng)});
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        const Point& c = centres[rng() % centres.size()];
        double x, y;
        do {
            x = c.x + N(rng);
            y = c.y + N(rng);
        } while (x < 0 || x > side || y < 0 || y > side);
        pts.push_back({x, y});
    }
    return pts;
}

PlaneGraph random_triangulation(int n, std::uint64_t seed, double cmin, double cmax) {
    require(n >= 4, "random_triangulation needs n >= 4");
    std::mt19937_64 rng(seed);
    std::vector<std::array<int, 3>> tris{{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    for (int v = 4; v < n; ++v) {
        std::size_t i = rng() % tris.size();
        auto [a, b, c] = tris[i];
        tris[i] = {a, b, v};
        tris.push_back({b, c, v});
        tris.push_back({c, a, v});
    }
    // random flips
    int flips = 2 * n;
    for (int it = 0; it < flips; ++it) {
        std::map<std::pair<int, int>, std::pair<int, int>> side;  // directed edge -> (tri, k)
        std::set<std::pair<int, int>> und;
        for (int i = 0; i < static_cast<int>(tris.size()); ++i)
            for (int k = 0; k < 3; ++k) {
                side[{tris[i][k], tris[i][(k + 1) % 3]}] = {i, k};
                und.insert(std::minmax(tris[i][k], tris[i][(k + 1) % 3]));
            }
        int i = static_cast<int>(rng() % tris.size()), k = static_cast<int>(rng() % 3);
        int a = tris[i][k], b = tris[i][(k + 1) % 3], c = tris[i][(k + 2) % 3];
        auto [j, kj] = side.at({b, a});
        int d = tris[j][(kj + 2) % 3];
        if (c == d || und.count(std::minmax(c, d))) continue;
        // degree of a and b must stay >= 3
        int dega = 0, degb = 0;
        for (auto& e : und) {
            if (e.first == a || e.second == a) ++dega;
            if (e.first == b || e.second == b) ++degb;
        }
        if (dega <= 3 || degb <= 3) continue;
        tris[i] = {a, d, c};
        tris[j] = {b, c, d};
    }
    PlaneGraph g = PlaneGraph::from_triangles(n, tris);
    std::uniform_real_distribution<double> U(cmin, cmax);
    g.c.assign(n, 1);
    for (int v = 0; v < n; ++v) g.c[v] = cmin == cmax ? cmin : U(rng);
    g.b = g.c;
    return g;
}

PlaneGraph triangulated_tube(int rings, int width) {
    require(rings >= 1 && width >= 3, "tube shape");
    int n = rings * width + 2;
    auto id = [&](int r, int i) { return 1 + r * width + (i % width); };
    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i < width; ++i) tris.push_back({0, id(0, i + 1), id(0, i)});
    for (int r = 0; r + 1 < rings; ++r)
        for (int i = 0; i < width; ++i) {
            tris.push_back({id(r, i), id(r, i + 1), id(r + 1, i)});
            tris.push_back({id(r, i + 1), id(r + 1, i + 1), id(r + 1, i)});
        }
    for (int i = 0; i < width; ++i) tris.push_back({n - 1, id(rings - 1, i), id(rings - 1, i + 1)});
    PlaneGraph g = PlaneGraph::from_triangles(n, tris);
    g.c.assign(n, 1);
    g.b.assign(n, 1);
    return g;
}

}  // namespace udgcp
