#include "udgcp/solution_structure.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>

#include "udgcp/plane.hpp"

namespace udgcp {

namespace {

UnitDiskGraph induced(const UnitDiskGraph& g, const std::vector<int>& keep) {
    if (keep.empty()) return {};
    std::vector<Point> pts;
    pts.reserve(keep.size());
    for (int v : keep) pts.push_back(g.points[v]);
    return build_udg(pts);
}

// Simple cycle inside a closed walk given by its vertex sequence.
std::optional<Cycle> cycle_in_walk(const std::vector<int>& w) {
    std::vector<int> st;
    std::map<int, std::size_t> at;
    for (std::size_t j = 0; j < 2 * w.size(); ++j) {
        int v = w[j % w.size()];
        auto it = at.find(v);
        if (it == at.end()) {
            at[v] = st.size();
            st.push_back(v);
            continue;
        }
        std::size_t i = it->second;
        if (st.size() - i >= 3) return Cycle(st.begin() + static_cast<long>(i), st.end());
        for (std::size_t x = i + 1; x < st.size(); ++x) at.erase(st[x]);
        st.resize(i + 1);
    }
    return std::nullopt;
}

}  // namespace

Cleaned clean(const UnitDiskGraph& g) {
    Cleaned out;
    std::vector<int> deg(g.n());
    std::vector<char> gone(g.n(), 0);
    std::priority_queue<int, std::vector<int>, std::greater<>> q;
    for (int v = 0; v < g.n(); ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1) q.push(v);
    }
    while (!q.empty()) {
        int v = q.top();
        q.pop();
        if (gone[v]) continue;
        gone[v] = 1;
        out.removed.push_back(v);
        for (int w : g.adj[v])
            if (!gone[w] && --deg[w] <= 1) q.push(w);
    }
    for (int v = 0; v < g.n(); ++v)
        if (!gone[v]) out.original.push_back(v);
    out.g = induced(g, out.original);
    return out;
}

double dense_threshold(int beta) { return 13.0 + 36.0 * beta; }

std::vector<int> five_colour(const AdjList& adj0) {
    int n = static_cast<int>(adj0.size());
    AdjList adj(n);
    for (int v = 0; v < n; ++v) {
        for (int w : adj0[v])
            if (w != v) adj[v].push_back(w);
        std::sort(adj[v].begin(), adj[v].end());
        adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
    }
    // smallest-last order
    std::vector<int> deg(n), order;
    std::vector<char> out(n, 0);
    std::set<std::pair<int, int>> pq;
    for (int v = 0; v < n; ++v) pq.insert({deg[v] = static_cast<int>(adj[v].size()), v});
    while (!pq.empty()) {
        int v = pq.begin()->second;
        pq.erase(pq.begin());
        out[v] = 1;
        order.push_back(v);
        for (int w : adj[v])
            if (!out[w]) {
                pq.erase({deg[w], w});
                pq.insert({--deg[w], w});
            }
    }
    std::vector<int> col(n, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        auto free_colour = [&]() {
            int used = 0;
            for (int w : adj[v])
                if (col[w] >= 0) used |= 1 << col[w];
            for (int c = 0; c < 5; ++c)
                if (!(used >> c & 1)) return c;
            return -1;
        };
        int c = free_colour();
        for (int a = 0; c < 0 && a < static_cast<int>(adj[v].size()); ++a)
            for (int b = 0; c < 0 && b < static_cast<int>(adj[v].size()); ++b) {
                int x = adj[v][a], y = adj[v][b];
                if (col[x] < 0 || col[y] < 0 || col[x] == col[y]) continue;
                int ca = col[x], cb = col[y];
                // Kempe chain of colours ca/cb from x
                std::vector<int> comp{x};
                std::vector<char> in(n, 0);
                in[x] = 1;
                for (std::size_t i = 0; i < comp.size(); ++i)
                    for (int w : adj[comp[i]])
                        if (!in[w] && (col[w] == ca || col[w] == cb)) in[w] = 1, comp.push_back(w);
                bool blocks = false;
                for (int w : adj[v]) blocks = blocks || (in[w] && col[w] == cb);
                if (blocks) continue;
                for (int w : comp) col[w] = col[w] == ca ? cb : ca;
                c = free_colour();
            }
        require(c >= 0, "five colouring failed: graph not planar");
        col[v] = c;
    }
    return col;
}

std::optional<DenseResult> dense_extract(const UnitDiskGraph& g, int k, const DenseOptions& opt) {
    if (k <= 0) return DenseResult{};
    double c = opt.c >= 0 ? opt.c : dense_threshold(opt.beta);
    int heavy = 0;
    for (int v = 0; v < g.n(); ++v) heavy += g.degree(v) >= 3;
    if (heavy <= c * k) return std::nullopt;
    DenseResult res;
    std::vector<int> alive(g.n());
    for (int v = 0; v < g.n(); ++v) alive[v] = v;
    // triangles at crossings
    while (static_cast<int>(res.cycles.size()) < k) {
        UnitDiskGraph r = induced(g, alive);
        auto xs = find_crossings(r);
        if (xs.empty()) break;
        auto [x, x2] = r.edges[xs[0].edge_a];
        auto [y, y2] = r.edges[xs[0].edge_b];
        std::array<int, 4> q{x, x2, y, y2};
        std::optional<Cycle> tri;
        for (int skip = 3; skip >= 0 && !tri; --skip) {
            Cycle t;
            for (int i = 0; i < 4; ++i)
                if (i != skip) t.push_back(q[i]);
            if (r.adjacent(t[0], t[1]) && r.adjacent(t[1], t[2]) && r.adjacent(t[0], t[2])) tri = t;
        }
        require(tri.has_value(), "crossing without a triangle: icf-property fails");
        Cycle orig;
        for (int v : *tri) orig.push_back(alive[v]);
        res.cycles.push_back(orig);
        ++res.harvested;
        std::set<int> drop(orig.begin(), orig.end());
        std::vector<int> keep;
        for (int v : alive)
            if (!drop.count(v)) keep.push_back(v);
        alive = keep;
    }
    if (static_cast<int>(res.cycles.size()) < k) {
        // the residue is plane: prune degree <= 1, colour the dual, take faces
        UnitDiskGraph r = induced(g, alive);
        Cleaned c2 = clean(r);
        std::vector<int> ids;
        for (int v : c2.original) ids.push_back(alive[v]);
        const UnitDiskGraph& h = c2.g;
        if (h.m() > 0) {
            std::vector<GPoint> pts;
            for (const auto& p : h.points) pts.push_back({p.x, p.y});
            PlaneGraph pg = PlaneGraph::from_coords(pts, h.edges);
            int F = static_cast<int>(pg.faces.size());
            AdjList dual(F);
            for (int e = 0; e < pg.m(); ++e) {
                int a = pg.dface[2 * e], b = pg.dface[2 * e + 1];
                if (a == b) continue;
                dual[a].push_back(b);
                dual[b].push_back(a);
            }
            auto col = five_colour(dual);
            for (int f = 0; f < F; ++f)
                for (int w : dual[f]) require(col[f] != col[w], "dual colouring is not proper");
            std::vector<int> size(5, 0);
            for (int f = 0; f < F; ++f) ++size[col[f]];
            std::vector<int> classes{0, 1, 2, 3, 4};
            std::stable_sort(classes.begin(), classes.end(), [&](int a, int b) { return size[a] > size[b]; });
            std::vector<char> used(g.n(), 0);
            for (const auto& cy : res.cycles)
                for (int v : cy) used[v] = 1;
            for (int cl : classes)
                for (int f = 0; f < F && static_cast<int>(res.cycles.size()) < k; ++f) {
                    if (col[f] != cl) continue;
                    std::vector<int> walk;
                    for (int d : pg.faces[f]) walk.push_back(pg.tail(d));
                    auto cy = cycle_in_walk(walk);
                    if (!cy) continue;
                    bool clash = false;
                    for (int v : *cy) clash = clash || used[ids[v]];
                    if (clash) continue;
                    Cycle orig;
                    for (int v : *cy) used[ids[v]] = 1, orig.push_back(ids[v]);
                    res.cycles.push_back(orig);
                    ++res.faces;
                }
        }
    }
    if (static_cast<int>(res.cycles.size()) < k) return std::nullopt;
    res.cycles.resize(k);
    return res;
}

long long packedness_constant(const MapConstants& mc) { return 3LL * mc.beta * mc.beta; }

int inter_cell_load(const GridMap& map, const std::vector<Cycle>& cycles) {
    std::map<CellId, int> load;
    for (const auto& cy : cycles) {
        bool intra = cy.size() == 3 && map.cell_of[cy[0]] == map.cell_of[cy[1]] && map.cell_of[cy[0]] == map.cell_of[cy[2]];
        if (intra) continue;
        for (int v : cy) ++load[map.cell_of[v]];
    }
    int mx = 0;
    for (const auto& [c, x] : load) mx = std::max(mx, x);
    return mx;
}

std::vector<Cycle> greedy_packing(const AdjList& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<char> alive(n, 1);
    std::vector<Cycle> out;
    for (;;) {
        Cycle best;
        for (int s = 0; s < n; ++s) {
            if (!alive[s]) continue;
            // BFS; the first non-tree edge closes a shortest cycle through the tree
            std::vector<int> dist(n, -1), par(n, -1);
            std::queue<int> q;
            dist[s] = 0;
            q.push(s);
            int cu = -1, cv = -1;
            while (!q.empty() && cu < 0) {
                int u = q.front();
                q.pop();
                if (best.size() && 2 * dist[u] + 1 >= static_cast<int>(best.size())) break;
                for (int w : adj[u]) {
                    if (!alive[w] || w == par[u]) continue;
                    if (dist[w] < 0) {
                        dist[w] = dist[u] + 1;
                        par[w] = u;
                        q.push(w);
                    } else {
                        cu = u, cv = w;
                        break;
                    }
                }
            }
            if (cu < 0) continue;
            std::vector<int> pu{cu}, pv{cv};
            while (pu.back() != s) pu.push_back(par[pu.back()]);
            while (pv.back() != s) pv.push_back(par[pv.back()]);
            while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) pu.pop_back(), pv.pop_back();
            Cycle c(pu.rbegin(), pu.rend());  // from the branch point to cu
            for (std::size_t i = 0; i + 1 < pv.size(); ++i) c.push_back(pv[i]);
            if (best.empty() || c.size() < best.size()) best = c;
            if (best.size() == 3) break;
        }
        if (best.empty()) return out;
        for (int v : best) alive[v] = 0;
        out.push_back(std::move(best));
    }
}

}  // namespace udgcp
