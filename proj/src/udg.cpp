#include "udgcp/udg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

namespace udgcp {

bool UnitDiskGraph::adjacent(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

int UnitDiskGraph::edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
    if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
    return static_cast<int>(it - edges.begin());
}

UnitDiskGraph UnitDiskGraph::from_edges(std::vector<Point> pts, std::vector<std::pair<int, int>> es) {
    UnitDiskGraph g;
    g.points = std::move(pts);
    for (auto& [u, v] : es) {
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    g.edges = std::move(es);
    g.adj.assign(g.points.size(), {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

UnitDiskGraph build_udg(const std::vector<Point>& points) {
    if (points.empty()) throw InputError("empty point set");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InputError("non-finite coordinate");
    // bucket by unit squares; neighbours lie in the 3x3 block
    std::map<std::pair<long long, long long>, std::vector<int>> buckets;
    auto key = [](const Point& p) {
        return std::make_pair(static_cast<long long>(std::floor(p.x)), static_cast<long long>(std::floor(p.y)));
    };
    for (int i = 0; i < static_cast<int>(points.size()); ++i) buckets[key(points[i])].push_back(i);
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        auto [bx, by] = key(points[i]);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = buckets.find({bx + dx, by + dy});
                if (it == buckets.end()) continue;
                for (int j : it->second) {
                    if (j <= i) continue;
                    if (points[i] == points[j])
                        throw InputError("duplicate points at indices " + std::to_string(i) + " and " +
                                         std::to_string(j));
                    if (within_unit(points[i], points[j])) es.emplace_back(i, j);
                }
            }
    }
    return UnitDiskGraph::from_edges(points, std::move(es));
}

namespace {

bool share_endpoint(std::pair<int, int> a, std::pair<int, int> b) {
    return a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
}

}  // namespace

std::vector<SegmentCrossing> find_crossings_naive(const UnitDiskGraph& g) {
    std::vector<SegmentCrossing> out;
    for (int i = 0; i < g.m(); ++i)
        for (int j = i + 1; j < g.m(); ++j) {
            auto [a, b] = g.edges[i];
            auto [c, d] = g.edges[j];
            if (share_endpoint(g.edges[i], g.edges[j])) continue;
            if (segments_properly_cross(g.points[a], g.points[b], g.points[c], g.points[d]))
                out.push_back({i, j, line_intersection(g.points[a], g.points[b], g.points[c], g.points[d])});
        }
    return out;
}

std::vector<SegmentCrossing> find_crossings(const UnitDiskGraph& g) {
    if (g.m() < 64) return find_crossings_naive(g);
    // bucket each edge into every unit square its bounding box touches
    double span = 0;
    for (auto [u, v] : g.edges) {
        span = std::max(span, std::fabs(g.points[u].x - g.points[v].x));
        span = std::max(span, std::fabs(g.points[u].y - g.points[v].y));
    }
    double side = std::max(span, 1e-9);
    std::unordered_map<long long, std::vector<int>> buckets;
    auto cell = [&](double v) { return static_cast<long long>(std::floor(v / side)); };
    auto pack = [](long long x, long long y) { return x * 1000003LL + y; };
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        const auto &p = g.points[u], &q = g.points[v];
        for (long long x = cell(std::min(p.x, q.x)); x <= cell(std::max(p.x, q.x)); ++x)
            for (long long y = cell(std::min(p.y, q.y)); y <= cell(std::max(p.y, q.y)); ++y)
                buckets[pack(x, y)].push_back(e);
    }
    std::vector<std::pair<int, int>> cand;
    for (auto& [k, es] : buckets)
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j)
                cand.emplace_back(std::min(es[i], es[j]), std::max(es[i], es[j]));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<SegmentCrossing> out;
    for (auto [i, j] : cand) {
        if (share_endpoint(g.edges[i], g.edges[j])) continue;
        auto [a, b] = g.edges[i];
        auto [c, d] = g.edges[j];
        if (segments_properly_cross(g.points[a], g.points[b], g.points[c], g.points[d]))
            out.push_back({i, j, line_intersection(g.points[a], g.points[b], g.points[c], g.points[d])});
    }
    return out;
}

IcfReport check_icf(const UnitDiskGraph& g) {
    IcfReport rep;
    for (const auto& c : find_crossings(g)) {
        auto [x, x2] = g.edges[c.edge_a];
        auto [y, y2] = g.edges[c.edge_b];
        int q[4] = {x, x2, y, y2};
        bool tri = false;
        for (int skip = 0; skip < 4 && !tri; ++skip) {
            int t[3], k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != skip) t[k++] = q[i];
            tri = g.adjacent(t[0], t[1]) && g.adjacent(t[1], t[2]) && g.adjacent(t[0], t[2]);
        }
        if (!tri) {
            rep.ok = false;
            rep.violations.push_back(c);
        }
    }
    return rep;
}

}  // namespace udgcp
