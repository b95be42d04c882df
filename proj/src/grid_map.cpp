#include "udgcp/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

namespace udgcp {

namespace {

constexpr long double kMargin = 1e-7L;

std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t hash_points(const std::vector<Point>& pts) {
    std::uint64_t h = 0x12345678abcdefULL;
    for (const auto& p : pts) {
        std::uint64_t bits[2];
        std::memcpy(&bits[0], &p.x, 8);
        std::memcpy(&bits[1], &p.y, 8);
        for (auto b : bits) {
            h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
    }
    return h;
}

long double frac_dist(long double v) {
    long double f = v - std::floor(v);
    return std::min(f, 1 - f);
}

// Collinear overlapping edges (a vertex on another edge) break every later step.
void reject_collinear(const UnitDiskGraph& g) {
    for (int v = 0; v < g.n(); ++v)
        for (int a : g.adj[v])
            for (int b : g.adj[v]) {
                if (a >= b) continue;
                if (!g.adjacent(a, b)) continue;
                if (orient_sign(g.points[a], g.points[b], g.points[v]) == 0)
                    throw InputError("collinear vertices " + std::to_string(a) + "," + std::to_string(v) + "," +
                                     std::to_string(b));
            }
}

bool offset_ok(const GridMap& m, const UnitDiskGraph& g) {
    for (const auto& q : m.gpos)
        if (frac_dist(q.x) < kMargin || frac_dist(q.y) < kMargin) return false;
    // crossing points of edges with each grid line
    std::map<std::pair<int, long long>, std::vector<long double>> hits;  // (axis, line) -> coordinate
    for (auto [u, v] : g.edges) {
        GPoint a = m.gpos[u], b = m.gpos[v];
        for (int axis = 0; axis < 2; ++axis) {
            long double a0 = axis == 0 ? a.x : a.y, b0 = axis == 0 ? b.x : b.y;
            long double a1 = axis == 0 ? a.y : a.x, b1 = axis == 0 ? b.y : b.x;
            long double lo = std::min(a0, b0), hi = std::max(a0, b0);
            for (long long k = static_cast<long long>(std::ceil(lo)); k <= static_cast<long long>(std::floor(hi)); ++k) {
                long double t = (k - a0) / (b0 - a0);
                long double other = a1 + t * (b1 - a1);
                if (frac_dist(other) < kMargin) return false;  // through a corner
                hits[{axis, k}].push_back(other);
            }
        }
    }
    for (auto& [key, vs] : hits) {
        std::sort(vs.begin(), vs.end());
        for (std::size_t i = 1; i < vs.size(); ++i)
            if (vs[i] - vs[i - 1] < kMargin) return false;
    }
    return true;
}

}  // namespace

double clique_weight_of(int count) { return std::log2(static_cast<double>(count) + 1.0); }

GPoint GridMap::to_grid(const Point& p) const {
    return {(static_cast<long double>(p.x) - ox) / cell_side, (static_cast<long double>(p.y) - oy) / cell_side};
}

Point GridMap::from_grid(GPoint q) const {
    return {static_cast<double>(q.x * cell_side + ox), static_cast<double>(q.y * cell_side + oy)};
}

int GridMap::count(CellId c) const {
    auto it = occupied.find(c);
    return it == occupied.end() ? 0 : static_cast<int>(it->second.size());
}

double GridMap::clique_weight(CellId c) const { return clique_weight_of(count(c)); }

std::vector<CellStats> GridMap::stats() const {
    std::vector<CellStats> out;
    for (const auto& [c, vs] : occupied)
        out.push_back({c, static_cast<int>(vs.size()), clique_weight_of(static_cast<int>(vs.size()))});
    return out;
}

double GridMap::total_weight() const {
    double s = 0;
    for (const auto& [c, vs] : occupied) s += clique_weight_of(static_cast<int>(vs.size()));
    return s;
}

CellId cell_at(GPoint p) {
    return {static_cast<long long>(std::floor(p.x)), static_cast<long long>(std::floor(p.y))};
}

GridMap build_map(const UnitDiskGraph& g, std::uint64_t salt) {
    if (g.n() == 0) throw InputError("empty graph");
    reject_collinear(g);
    std::uint64_t seed = hash_points(g.points) ^ (salt * 0x2545f4914f6cdd1dULL);
    GridMap m;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        m.attempts = attempt + 1;
        long double fx = static_cast<long double>(splitmix(seed) >> 11) / static_cast<long double>(1ULL << 53);
        long double fy = static_cast<long double>(splitmix(seed) >> 11) / static_cast<long double>(1ULL << 53);
        m.ox = fx * m.cell_side;
        m.oy = fy * m.cell_side;
        m.gpos.clear();
        for (const auto& p : g.points) m.gpos.push_back(m.to_grid(p));
        if (!offset_ok(m, g)) continue;
        m.cell_of.clear();
        m.occupied.clear();
        for (int v = 0; v < g.n(); ++v) {
            CellId c = cell_at(m.gpos[v]);
            m.cell_of.push_back(c);
            m.occupied[c].push_back(v);
        }
        return m;
    }
    throw InputError("no general-position grid offset found");
}

long long cell_distance(CellId a, CellId b) { return std::llabs(a.i - b.i) + std::llabs(a.j - b.j); }

std::vector<CellId> cells_on_segment(GPoint a, GPoint b) {
    std::vector<std::pair<long double, int>> events;  // parameter, axis
    for (int axis = 0; axis < 2; ++axis) {
        long double a0 = axis == 0 ? a.x : a.y, b0 = axis == 0 ? b.x : b.y;
        long double lo = std::min(a0, b0), hi = std::max(a0, b0);
        for (long long k = static_cast<long long>(std::floor(lo)) + 1; k < hi; ++k) {
            if (k <= lo) continue;
            events.emplace_back((k - a0) / (b0 - a0), axis);
        }
    }
    std::sort(events.begin(), events.end());
    std::vector<CellId> out{cell_at(a)};
    GPoint d = b - a;
    for (std::size_t i = 0; i < events.size(); ++i) {
        long double t = events[i].first;
        long double t2 = i + 1 < events.size() ? events[i + 1].first : 1.0L;
        GPoint mid = a + ((t + t2) / 2) * d;
        CellId c = cell_at(mid);
        if (!(c == out.back())) out.push_back(c);
    }
    return out;
}

int lattice_ball(int r) { return r < 0 ? 0 : 2 * r * r + 2 * r + 1; }

MapConstants default_constants() { return {5, lattice_ball(5), lattice_ball(10)}; }

MapConstants compute_constants(const GridMap& map, const UnitDiskGraph& g) {
    MapConstants k;
    int alpha = 1;
    for (auto [u, v] : g.edges)
        alpha = std::max(alpha, static_cast<int>(cells_on_segment(map.gpos[u], map.gpos[v]).size()));
    k.alpha = alpha;
    k.beta = lattice_ball(alpha);
    k.kappa = lattice_ball(2 * alpha);
    return k;
}

std::vector<CellId> neighbourhood(CellId c, int r) {
    std::vector<CellId> out;
    for (long long di = -r; di <= r; ++di) {
        long long rest = r - std::llabs(di);
        for (long long dj = -rest; dj <= rest; ++dj) out.push_back({c.i + di, c.j + dj});
    }
    return out;
}

}  // namespace udgcp
