#include "udgcp/cycle_separator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>

namespace udgcp {

LevelTree build_level_tree(const PlaneGraph& h, int root) {
    int n = h.n();
    require(root >= 0 && root < n, "root out of range");
    LevelTree lt;
    lt.root = root;
    lt.parent.assign(n, -1);
    lt.parent_edge.assign(n, -1);
    lt.lv.assign(n, INFINITY);
    lt.depth.assign(n, 0);
    std::vector<char> done(n, 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    lt.lv[root] = h.c[root];
    pq.push({lt.lv[root], root});
    while (!pq.empty()) {
        auto [l, v] = pq.top();
        pq.pop();
        if (done[v] || l != lt.lv[v]) continue;
        done[v] = 1;
        if (v != root) lt.depth[v] = lt.depth[lt.parent[v]] + 1;
        for (int d : h.rot[v]) {
            int w = h.head(d);
            if (done[w]) continue;
            double nl = l + h.c[w];
            bool better = nl < lt.lv[w] || (nl == lt.lv[w] && (v < lt.parent[w] ||
                                                               (v == lt.parent[w] && PlaneGraph::edge_of(d) < lt.parent_edge[w])));
            if (better) {
                lt.lv[w] = nl;
                lt.parent[w] = v;
                lt.parent_edge[w] = PlaneGraph::edge_of(d);
                pq.push({nl, w});
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (!done[v]) throw InputError("level tree: graph is disconnected");
    return lt;
}

double cycle_weight_of(const PlaneGraph& h, const std::vector<int>& cycle) {
    double s = 0;
    for (int v : cycle) s += h.c[v];
    return s;
}

double cstar_of(const PlaneGraph& h) {
    double s = 0;
    for (double x : h.c) s += x * x;
    return std::sqrt(s);
}

double balance_ratio_of(const PlaneGraph& h, const std::vector<int>& cycle) {
    double total = 0;
    for (double x : h.b) total += x;
    if (total <= 0) return 0;
    std::vector<char> gone(h.n(), 0);
    for (int v : cycle) gone[v] = 1;
    std::vector<char> seen(h.n(), 0);
    double worst = 0;
    for (int s = 0; s < h.n(); ++s) {
        if (gone[s] || seen[s]) continue;
        double acc = 0;
        std::vector<int> st{s};
        seen[s] = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            acc += h.b[v];
            for (int d : h.rot[v]) {
                int w = h.head(d);
                if (!gone[w] && !seen[w]) {
                    seen[w] = 1;
                    st.push_back(w);
                }
            }
        }
        worst = std::max(worst, acc);
    }
    return worst / total;
}

bool is_simple_cycle(const PlaneGraph& h, const std::vector<int>& cycle, const std::vector<int>& edges) {
    std::size_t k = cycle.size();
    if (k < 2 || edges.size() != k) return false;
    if (std::set<int>(cycle.begin(), cycle.end()).size() != k) return false;
    if (std::set<int>(edges.begin(), edges.end()).size() != k) return false;
    for (std::size_t i = 0; i < k; ++i) {
        int e = edges[i];
        if (e < 0 || e >= h.m()) return false;
        auto [a, b] = h.edges[e];
        int x = cycle[i], y = cycle[(i + 1) % k];
        if (!((a == x && b == y) || (a == y && b == x))) return false;
    }
    return true;
}

namespace {

struct Walked {
    std::vector<int> cycle, edges;
};

// Boundary of a face set as one simple cycle, if it is one.
std::optional<Walked> boundary_cycle(const PlaneGraph& h, const std::vector<char>& in) {
    std::map<int, std::vector<int>> inc;  // vertex -> boundary edges
    int F = static_cast<int>(h.faces.size());
    for (int f = 0; f < F; ++f) {
        if (!in[f]) continue;
        for (int d : h.faces[f])
            if (!in[h.dface[PlaneGraph::twin(d)]]) {
                int e = PlaneGraph::edge_of(d);
                inc[h.edges[e].first].push_back(e);
                inc[h.edges[e].second].push_back(e);
            }
    }
    if (inc.empty()) return std::nullopt;
    for (auto& [v, es] : inc)
        if (es.size() != 2) return std::nullopt;
    Walked w;
    int start = inc.begin()->first;
    int v = start, prev_e = -1;
    do {
        const auto& es = inc[v];
        int e = es[0] == prev_e ? es[1] : es[0];
        if (prev_e < 0) e = std::min(es[0], es[1]);
        w.cycle.push_back(v);
        w.edges.push_back(e);
        v = h.edges[e].first == v ? h.edges[e].second : h.edges[e].first;
        prev_e = e;
        if (w.cycle.size() > inc.size()) return std::nullopt;
    } while (v != start);
    if (w.cycle.size() != inc.size()) return std::nullopt;
    return w;
}

// Weight of vertices strictly inside a face set (every incident face inside).
double inside_weight(const PlaneGraph& h, const std::vector<char>& in) {
    double s = 0;
    for (int v = 0; v < h.n(); ++v) {
        if (h.rot[v].empty()) continue;
        bool all = true;
        for (int d : h.rot[v])
            if (!in[h.dface[d]]) {
                all = false;
                break;
            }
        if (all) s += h.b[v];
    }
    return s;
}

double total_b(const PlaneGraph& h) {
    double s = 0;
    for (double x : h.b) s += x;
    return s;
}

CycleSeparatorResult face_result(const PlaneGraph& h, int f, const char* kind) {
    CycleSeparatorResult r;
    r.kind = kind;
    for (int d : h.faces[f]) {
        r.cycle.push_back(h.tail(d));
        r.cycle_edges.push_back(PlaneGraph::edge_of(d));
    }
    r.weight = cycle_weight_of(h, r.cycle);
    r.balance_ratio = balance_ratio_of(h, r.cycle);
    return r;
}

// Tree path from x up to (and including) the ancestor top.
std::vector<int> path_up(const LevelTree& lt, int x, int top) {
    std::vector<int> p{x};
    while (x != top) {
        x = lt.parent[x];
        require(x >= 0, "path_up: not an ancestor");
        p.push_back(x);
    }
    return p;
}

int lca(const LevelTree& lt, int a, int b) {
    while (lt.depth[a] > lt.depth[b]) a = lt.parent[a];
    while (lt.depth[b] > lt.depth[a]) b = lt.parent[b];
    while (a != b) {
        a = lt.parent[a];
        b = lt.parent[b];
    }
    return a;
}

Walked fundamental_walk(const PlaneGraph& h, const LevelTree& lt, int e) {
    auto [u, v] = h.edges[e];
    int w = lca(lt, u, v);
    auto pu = path_up(lt, u, w), pv = path_up(lt, v, w);
    Walked out;
    // u ... w ... v, closed by e
    for (int x : pu) out.cycle.push_back(x);
    for (int i = static_cast<int>(pv.size()) - 2; i >= 0; --i) out.cycle.push_back(pv[i]);
    for (std::size_t i = 0; i + 1 < pu.size(); ++i) out.edges.push_back(lt.parent_edge[pu[i]]);
    for (int i = static_cast<int>(pv.size()) - 2; i >= 0; --i) out.edges.push_back(lt.parent_edge[pv[i]]);
    out.edges.push_back(e);
    return out;
}

}  // namespace

CycleSeparatorResult fundamental_cycle_separator(const PlaneGraph& h, const LevelTree& lt) {
    require(h.triangulated(), "fundamental_cycle_separator needs a triangulation");
    int F = static_cast<int>(h.faces.size());
    std::vector<char> tree_edge(h.m(), 0);
    for (int v = 0; v < h.n(); ++v)
        if (lt.parent_edge[v] >= 0) tree_edge[lt.parent_edge[v]] = 1;
    // dual spanning tree over non-tree edges
    std::vector<int> dpar(F, -2), dpar_edge(F, -1), order;
    std::vector<std::vector<int>> kids(F);
    dpar[0] = -1;
    std::vector<int> st{0};
    while (!st.empty()) {
        int f = st.back();
        st.pop_back();
        order.push_back(f);
        for (int d : h.faces[f]) {
            int e = PlaneGraph::edge_of(d);
            if (tree_edge[e]) continue;
            int g = h.dface[PlaneGraph::twin(d)];
            if (dpar[g] != -2) continue;
            dpar[g] = f;
            dpar_edge[g] = e;
            kids[f].push_back(g);
            st.push_back(g);
        }
    }
    require(static_cast<int>(order.size()) == F, "dual of the cotree is disconnected");
    // Euler tour intervals
    std::vector<int> tin(F), tout(F);
    {
        int clock = 0;
        std::vector<std::pair<int, std::size_t>> s2{{0, 0}};
        tin[0] = clock++;
        while (!s2.empty()) {
            auto& [f, i] = s2.back();
            if (i < kids[f].size()) {
                int g = kids[f][i++];
                tin[g] = clock++;
                s2.push_back({g, 0});
            } else {
                tout[f] = clock - 1;
                s2.pop_back();
            }
        }
    }
    std::vector<int> phi(h.n());
    std::vector<double> sub(F, 0);
    for (int v = 0; v < h.n(); ++v) {
        phi[v] = h.dface[h.rot[v][0]];
        sub[phi[v]] += h.b[v];
    }
    for (int i = F - 1; i >= 1; --i) sub[dpar[order[i]]] += sub[order[i]];
    double B = total_b(h);
    int best_e = -1;
    double best_w = INFINITY;
    for (int e = 0; e < h.m(); ++e) {
        if (tree_edge[e]) continue;
        int f1 = h.dface[2 * e], f2 = h.dface[2 * e + 1];
        int child = dpar_edge[f1] == e && dpar[f1] == f2 ? f1 : f2;
        auto w = fundamental_walk(h, lt, e);
        double inside = sub[child], on = 0;
        for (int x : w.cycle) {
            on += h.b[x];
            if (tin[phi[x]] >= tin[child] && tin[phi[x]] <= tout[child]) inside -= h.b[x];
        }
        double outside = B - inside - on;
        if (std::max(inside, outside) <= 2.0 * B / 3.0 + 1e-12 * B) {
            double wt = cycle_weight_of(h, w.cycle);
            if (wt < best_w) {
                best_w = wt;
                best_e = e;
            }
        }
    }
    if (best_e < 0) throw InvariantError("no 2/3-balanced fundamental cycle");
    auto w = fundamental_walk(h, lt, best_e);
    CycleSeparatorResult r;
    r.kind = "fundamental";
    r.cycle = w.cycle;
    r.cycle_edges = w.edges;
    r.weight = cycle_weight_of(h, r.cycle);
    r.balance_ratio = balance_ratio_of(h, r.cycle);
    r.root = lt.root;
    r.edge = best_e;
    r.u = h.edges[best_e].first;
    r.v = h.edges[best_e].second;
    r.top = lca(lt, r.u, r.v);
    return r;
}

namespace {

struct LevelCycle {
    double level = 0;
    Walked walk;
    std::vector<char> u_side;  // faces of the component holding u
};

double face_level(const PlaneGraph& h, const LevelTree& lt, int f) {
    double m = INFINITY;
    for (int d : h.faces[f]) m = std::min(m, lt.lv[h.tail(d)]);
    return m;
}

std::optional<LevelCycle> level_cycle(const PlaneGraph& h, const LevelTree& lt, int u, double ell) {
    int F = static_cast<int>(h.faces.size());
    std::vector<char> inU(F, 0), comp(F, 0);
    bool any = false;
    for (int f = 0; f < F; ++f) {
        inU[f] = face_level(h, lt, f) < ell;
        any = any || inU[f];
    }
    if (!any) return std::nullopt;
    std::vector<int> st;
    for (int d : h.rot[u]) {
        int f = h.dface[d];
        if (inU[f]) return std::nullopt;
        if (!comp[f]) {
            comp[f] = 1;
            st.push_back(f);
        }
    }
    while (!st.empty()) {
        int f = st.back();
        st.pop_back();
        for (int d : h.faces[f]) {
            int g = h.dface[PlaneGraph::twin(d)];
            if (!inU[g] && !comp[g]) {
                comp[g] = 1;
                st.push_back(g);
            }
        }
    }
    auto w = boundary_cycle(h, comp);
    if (!w) return std::nullopt;
    return LevelCycle{ell, *w, comp};
}

}  // namespace

CycleSequence build_cycle_sequence(const PlaneGraph& h, const LevelTree& lt, const CycleSeparatorResult& s) {
    CycleSequence seq;
    seq.cstar = cstar_of(h);
    double cs = seq.cstar;
    seq.lmin = lt.lv[s.top];
    int u = lt.lv[s.u] >= lt.lv[s.v] ? s.u : s.v;
    seq.lmax = lt.lv[u];
    seq.t = static_cast<int>(std::floor((seq.lmax - seq.lmin) / cs - 1.0));
    // W(l) = sum of c(x) over x with lv(parent(x)) < l <= lv(x); bounds c(C_l)
    std::vector<std::pair<double, double>> starts, ends;
    for (int x = 0; x < h.n(); ++x) {
        double lo = lt.parent[x] >= 0 ? lt.lv[lt.parent[x]] : 0.0;
        starts.push_back({lo, h.c[x]});
        ends.push_back({lt.lv[x], h.c[x]});
    }
    std::sort(starts.begin(), starts.end());
    std::sort(ends.begin(), ends.end());
    std::vector<double> ps(starts.size() + 1, 0), pe(ends.size() + 1, 0);
    for (std::size_t i = 0; i < starts.size(); ++i) ps[i + 1] = ps[i] + starts[i].second;
    for (std::size_t i = 0; i < ends.size(); ++i) pe[i + 1] = pe[i] + ends[i].second;
    auto W = [&](double l) {
        // starts strictly below l, minus ends strictly below l
        auto a = std::lower_bound(starts.begin(), starts.end(), std::make_pair(l, -static_cast<double>(INFINITY))) - starts.begin();
        auto b = std::lower_bound(ends.begin(), ends.end(), std::make_pair(l, -static_cast<double>(INFINITY))) - ends.begin();
        return ps[a] - pe[b];
    };
    std::vector<double> bps;
    for (auto& p : starts) bps.push_back(p.first);
    for (auto& p : ends) bps.push_back(p.first);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    for (int j = 1; j <= seq.t - 2; j += 2) {
        double a = seq.lmin + (j - 1) * cs, b = seq.lmin + j * cs;
        std::vector<double> reps;
        if (a > seq.lmin) reps.push_back(a);
        auto it = std::upper_bound(bps.begin(), bps.end(), a);
        double prev = a;
        for (; it != bps.end() && *it < b; ++it) {
            reps.push_back((prev + *it) / 2);
            reps.push_back(*it);
            prev = *it;
        }
        reps.push_back((prev + b) / 2);
        std::sort(reps.begin(), reps.end());
        double best = INFINITY, best_l = NAN;
        for (double l : reps) {
            if (l <= seq.lmin || l < a || l >= b) continue;
            double wv = W(l);
            if (wv < best) {
                best = wv;
                best_l = l;
            }
        }
        if (std::isnan(best_l)) continue;
        auto lc = level_cycle(h, lt, u, best_l);
        if (!lc) continue;
        for (int x : lc->walk.cycle) {
            double lo = lt.parent[x] >= 0 ? lt.lv[lt.parent[x]] : 0.0;
            if (!(lo < best_l && best_l <= lt.lv[x])) ++seq.level_violations;
        }
        seq.levels.push_back(best_l);
        seq.cycles.push_back(lc->walk.cycle);
        seq.cycle_edges.push_back(lc->walk.edges);
        seq.weights.push_back(cycle_weight_of(h, lc->walk.cycle));
    }
    return seq;
}

namespace {

// Faces on one side of a cycle (BFS from the face left of its first edge).
std::vector<char> side_of(const PlaneGraph& h, const std::vector<int>& edges) {
    int F = static_cast<int>(h.faces.size());
    std::vector<char> cut(h.m(), 0), side(F, 0);
    for (int e : edges) cut[e] = 1;
    int s = h.dface[2 * edges[0]];
    std::vector<int> st{s};
    side[s] = 1;
    while (!st.empty()) {
        int f = st.back();
        st.pop_back();
        for (int d : h.faces[f]) {
            if (cut[PlaneGraph::edge_of(d)]) continue;
            int g = h.dface[PlaneGraph::twin(d)];
            if (!side[g]) {
                side[g] = 1;
                st.push_back(g);
            }
        }
    }
    return side;
}

CycleSeparatorResult from_walk(const PlaneGraph& h, const Walked& w, const char* kind) {
    CycleSeparatorResult r;
    r.kind = kind;
    r.cycle = w.cycle;
    r.cycle_edges = w.edges;
    r.weight = cycle_weight_of(h, w.cycle);
    r.balance_ratio = balance_ratio_of(h, w.cycle);
    return r;
}

}  // namespace

CycleSeparatorResult balanced_small_separator(const PlaneGraph& h) {
    require(h.triangulated(), "balanced_small_separator needs a connected triangulation");
    double B = total_b(h);
    double cs = cstar_of(h);
    if (B <= 0) return face_result(h, 0, "face");
    for (int v = 0; v < h.n(); ++v)
        if (h.b[v] >= B / 9.0) return face_result(h, h.dface[h.rot[v][0]], "face");

    LevelTree lt = build_level_tree(h, 0);
    CycleSeparatorResult S = fundamental_cycle_separator(h, lt);
    if (S.weight <= 8 * cs) return S;

    CycleSequence seq = build_cycle_sequence(h, lt, S);
    int u = lt.lv[S.u] >= lt.lv[S.v] ? S.u : S.v;
    int F = static_cast<int>(h.faces.size());

    struct Entry {
        std::vector<char> rside;  // faces of C^r
        double br = 0;            // b(C^r)
        std::optional<Walked> walk;
    };
    std::vector<Entry> D;
    D.push_back({std::vector<char>(F, 0), 0.0, std::nullopt});
    for (std::size_t i = 0; i < seq.cycles.size(); ++i) {
        Walked w{seq.cycles[i], seq.cycle_edges[i]};
        auto ll = level_cycle(h, lt, u, seq.levels[i]);
        Entry en;
        en.rside.assign(F, 0);
        for (int f = 0; f < F; ++f) en.rside[f] = !ll->u_side[f];
        en.br = inside_weight(h, en.rside);
        en.walk = w;
        double bu = inside_weight(h, ll->u_side);
        if (std::max(en.br, bu) <= 2.0 * B / 3.0) {
            auto r = from_walk(h, w, "sequence");
            if (r.balance_ratio <= 8.0 / 9.0 && r.weight <= 10 * cs) return r;
        }
        D.push_back(std::move(en));
    }
    D.push_back({std::vector<char>(F, 1), B - h.b[u], std::nullopt});

    bool eq = false;
    for (const auto& en : D)
        if (en.br == B / 3.0 || en.br == 2.0 * B / 3.0) eq = true;
    std::size_t k2 = 0;
    while (k2 < D.size() && !(D[k2].br > 2.0 * B / 3.0)) ++k2;
    require(k2 > 0 && k2 < D.size(), "no high cycle in the sequence");
    std::size_t k1 = k2 - 1;
    std::vector<char> sin = side_of(h, S.cycle_edges);
    std::vector<char> R(F), R1(F), R2(F), R3(F), R4(F);
    for (int f = 0; f < F; ++f) {
        R[f] = D[k2].rside[f] && !D[k1].rside[f];
        R1[f] = R[f] && sin[f];
        R2[f] = R[f] && !sin[f];
        R3[f] = R1[f] || D[k1].rside[f];
        R4[f] = R2[f] || D[k1].rside[f];
    }
    double b1 = inside_weight(h, R1), b2 = inside_weight(h, R2);
    double bpi = 0;
    {
        std::vector<char> onS(h.n(), 0);
        for (int x : S.cycle) onS[x] = 1;
        for (int x = 0; x < h.n(); ++x) {
            if (!onS[x]) continue;
            for (int d : h.rot[x])
                if (R[h.dface[d]]) {
                    bpi += h.b[x];
                    break;
                }
        }
    }
    const std::vector<char>* regions[4] = {&R1, &R2, &R3, &R4};
    int pick;
    if (b1 >= B / 3.0) pick = 0;
    else if (b2 >= B / 3.0) pick = 1;
    else if (bpi >= B / 9.0) pick = 0;
    else pick = b1 >= B / 9.0 ? 2 : 3;

    auto try_region = [&](int i) -> std::optional<CycleSeparatorResult> {
        auto w = boundary_cycle(h, *regions[i]);
        if (!w) return std::nullopt;
        auto r = from_walk(h, *w, "region");
        if (r.balance_ratio <= 8.0 / 9.0 && r.weight <= 10 * cs) return r;
        return std::nullopt;
    };
    if (auto r = try_region(pick)) {
        r->equality_hit = eq;
        return *r;
    }
    for (int i = 0; i < 4; ++i)
        if (auto r = try_region(i)) {
            r->fallback = true;
            r->equality_hit = eq;
            return *r;
        }
    for (std::size_t i = 0; i < seq.cycles.size(); ++i) {
        auto r = from_walk(h, {seq.cycles[i], seq.cycle_edges[i]}, "sequence");
        if (r.balance_ratio <= 8.0 / 9.0 && r.weight <= 10 * cs) {
            r.fallback = true;
            return r;
        }
    }
    throw InvariantError("cycle separator: no candidate met the guarantees");
}

}  // namespace udgcp
