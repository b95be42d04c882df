#include "udgcp/cac.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace udgcp {

bool CircularPairing::valid() const {
    std::vector<int> seen(2 * m + 1, 0);
    if (static_cast<int>(arcs.size()) != m) return false;
    for (auto [a, b] : arcs) {
        if (a < 1 || b > 2 * m || a >= b) return false;
        if (seen[a]++ || seen[b]++) return false;
    }
    return true;
}

bool arcs_cross(std::pair<int, int> a, std::pair<int, int> b) {
    if (a.first > a.second) std::swap(a.first, a.second);
    if (b.first > b.second) std::swap(b.first, b.second);
    return (a.first < b.first && b.first < a.second && a.second < b.second) ||
           (b.first < a.first && a.first < b.second && b.second < a.second);
}

CACGraph cac_graph(const CircularPairing& p) {
    CACGraph g;
    g.n = static_cast<int>(p.arcs.size());
    g.adj.assign(g.n, {});
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (arcs_cross(p.arcs[i], p.arcs[j])) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
                g.edges.emplace_back(i, j);
            }
    return g;
}

bool is_kzz_free(const CACGraph& g, int z) {
    if (z <= 0) return false;
    if (2 * z > g.n) return true;
    std::vector<std::vector<char>> a(g.n, std::vector<char>(g.n, 0));
    for (auto [u, v] : g.edges) a[u][v] = a[v][u] = 1;
    // choose side A (size z, increasing indices); B must come from common neighbours of A
    std::vector<int> side;
    std::function<bool(int, std::vector<int>)> rec = [&](int from, std::vector<int> common) -> bool {
        if (static_cast<int>(common.size()) < z) return false;
        if (static_cast<int>(side.size()) == z) return true;
        for (int v = from; v < g.n; ++v) {
            std::vector<int> next;
            for (int w : common)
                if (a[v][w]) next.push_back(w);
            side.push_back(v);
            bool hit = rec(v + 1, std::move(next));
            side.pop_back();
            if (hit) return true;
        }
        return false;
    };
    std::vector<int> everyone(g.n);
    for (int i = 0; i < g.n; ++i) everyone[i] = i;
    return !rec(0, everyone);
}

bool pairs_kzz_free(const std::vector<std::pair<int, int>>& pairs, int z) {
    CACGraph g;
    g.n = static_cast<int>(pairs.size());
    g.adj.assign(g.n, {});
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (arcs_cross(pairs[i], pairs[j])) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
                g.edges.emplace_back(i, j);
            }
    return is_kzz_free(g, z);
}

std::vector<int> arc_levels(const CircularPairing& p) {
    int k = static_cast<int>(p.arcs.size());
    std::vector<int> level(k, 0);
    auto contains = [&](int i, int j) {  // arc i strictly contains arc j
        return p.arcs[i].first < p.arcs[j].first && p.arcs[j].second < p.arcs[i].second;
    };
    int remaining = k, lv = 0;
    while (remaining > 0) {
        ++lv;
        std::vector<int> pick;
        for (int j = 0; j < k; ++j) {
            if (level[j]) continue;
            bool maximal = true;
            for (int i = 0; i < k && maximal; ++i)
                if (i != j && !level[i] && contains(i, j)) maximal = false;
            if (maximal) pick.push_back(j);
        }
        for (int j : pick) level[j] = lv;
        remaining -= static_cast<int>(pick.size());
    }
    return level;
}

namespace {

void sort_arcs(std::vector<std::pair<int, int>>& arcs) { std::sort(arcs.begin(), arcs.end()); }

// Antichains of s arcs on points 1..2s (no arc contains another) with b - a <= 4z.
std::vector<std::vector<std::pair<int, int>>> level_patterns(int s, int z) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<int> mate(2 * s + 1, 0);
    std::vector<std::pair<int, int>> cur;
    std::function<void()> rec = [&]() {
        int a = 1;
        while (a <= 2 * s && mate[a]) ++a;
        if (a > 2 * s) {
            out.push_back(cur);
            return;
        }
        for (int b = a + 1; b <= std::min(2 * s, a + 4 * z); ++b) {
            if (mate[b]) continue;
            bool ok = true;
            for (auto [c, d] : cur)
                if ((c < a && b < d) || (a < c && d < b)) ok = false;
            if (!ok) continue;
            mate[a] = b;
            mate[b] = a;
            cur.emplace_back(a, b);
            rec();
            cur.pop_back();
            mate[a] = mate[b] = 0;
        }
    };
    rec();
    return out;
}

}  // namespace

std::vector<CircularPairing> enumerate_kzz_free(int m, int z) {
    std::set<std::vector<std::pair<int, int>>> found;
    if (m <= 0) return {};
    // state: arcs on ground 1..g with their levels
    struct Arc {
        int a, b, level;
    };
    std::function<void(std::vector<Arc>&, int, int)> grow = [&](std::vector<Arc>& arcs, int ground, int lv) {
        if (ground == 2 * m) {
            std::vector<std::pair<int, int>> ps;
            for (auto& x : arcs) ps.emplace_back(x.a, x.b);
            sort_arcs(ps);
            found.insert(ps);
            return;
        }
        int left = (2 * m - ground) / 2;
        for (int s = 1; s <= left; ++s) {
            auto pats = level_patterns(s, z);
            int total = ground + 2 * s;
            // choose which of the total slots are new points
            std::vector<int> slots;
            std::function<void(int)> choose = [&](int from) {
                if (static_cast<int>(slots.size()) == 2 * s) {
                    std::vector<int> oldpos, newpos = slots;
                    std::vector<char> isnew(total + 1, 0);
                    for (int x : slots) isnew[x] = 1;
                    for (int x = 1; x <= total; ++x)
                        if (!isnew[x]) oldpos.push_back(x);
                    std::vector<Arc> base;
                    for (auto& x : arcs) base.push_back({oldpos[x.a - 1], oldpos[x.b - 1], x.level});
                    for (const auto& pat : pats) {
                        std::vector<Arc> next = base;
                        bool ok = true;
                        for (auto [pa, pb] : pat) {
                            Arc na{newpos[pa - 1], newpos[pb - 1], lv + 1};
                            // a new arc must sit under some arc of the previous level
                            if (lv > 0) {
                                bool under = false;
                                for (auto& x : base)
                                    if (x.level == lv && x.a < na.a && na.b < x.b) under = true;
                                if (!under) ok = false;
                            }
                            // and must not contain any older arc
                            for (auto& x : base)
                                if (na.a < x.a && x.b < na.b) ok = false;
                            if (!ok) break;
                            next.push_back(na);
                        }
                        if (!ok) continue;
                        // level claim: an arc of level i holds <= z endpoints of arcs of level < i - z
                        for (auto& x : next) {
                            int cnt = 0;
                            for (auto& y : next)
                                if (y.level < x.level - z) {
                                    if (x.a < y.a && y.a < x.b) ++cnt;
                                    if (x.a < y.b && y.b < x.b) ++cnt;
                                }
                            if (cnt > z) ok = false;
                        }
                        if (!ok) continue;
                        CircularPairing cp;
                        cp.m = static_cast<int>(next.size());
                        for (auto& x : next) cp.arcs.emplace_back(x.a, x.b);
                        sort_arcs(cp.arcs);
                        if (!is_kzz_free(cac_graph(cp), z)) continue;
                        // recomputed levels must agree with the construction
                        auto lvls = arc_levels(cp);
                        bool agree = true;
                        for (auto& x : next) {
                            auto it = std::lower_bound(cp.arcs.begin(), cp.arcs.end(), std::make_pair(x.a, x.b));
                            if (lvls[it - cp.arcs.begin()] != x.level) agree = false;
                        }
                        if (!agree) continue;
                        grow(next, total, lv + 1);
                    }
                    return;
                }
                for (int x = from; x <= total; ++x) {
                    slots.push_back(x);
                    choose(x + 1);
                    slots.pop_back();
                }
            };
            choose(1);
        }
    };
    std::vector<Arc> start;
    grow(start, 0, 0);
    std::vector<CircularPairing> out;
    for (const auto& ps : found) out.push_back({m, ps});
    return out;
}

std::vector<CircularPairing> enumerate_kzz_free_filter(int m, int z) {
    std::vector<CircularPairing> out;
    std::vector<int> mate(2 * m + 1, 0);
    std::vector<std::pair<int, int>> cur;
    std::function<void()> rec = [&]() {
        int a = 1;
        while (a <= 2 * m && mate[a]) ++a;
        if (a > 2 * m) {
            CircularPairing p{m, cur};
            sort_arcs(p.arcs);
            if (is_kzz_free(cac_graph(p), z)) out.push_back(p);
            return;
        }
        for (int b = a + 1; b <= 2 * m; ++b) {
            if (mate[b]) continue;
            mate[a] = b;
            mate[b] = a;
            cur.emplace_back(a, b);
            rec();
            cur.pop_back();
            mate[a] = mate[b] = 0;
        }
    };
    if (m > 0) rec();
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace udgcp
