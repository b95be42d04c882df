#include "udgcp/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace udgcp {

namespace {

constexpr long double kEps = 1e-9L;

struct Bbox {
    long double x0, y0, x1, y1;
};

Bbox bbox_of(GPoint a, GPoint b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

bool geometric(const std::vector<EKind>* kinds, int e) { return !kinds || (*kinds)[e] != EKind::Bridge; }

}  // namespace

MapSparsifier build_sparsifier(const UnitDiskGraph& g, const GridMap& map) {
    MapSparsifier H;
    H.alpha = compute_constants(map, g).alpha;
    std::set<CellId> dense;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) >= 3) {
            ++H.ell;
            dense.insert(map.cell_of[v]);
        }
    H.dense_cells.assign(dense.begin(), dense.end());
    for (const auto& c : dense)
        for (const auto& d : neighbourhood(c, H.alpha)) H.region.insert(d);
    std::set<std::pair<long long, long long>> hs, vs;  // horizontal side (i,j)-(i+1,j); vertical (i,j)-(i,j+1)
    for (const auto& c : H.region) {
        hs.insert({c.i, c.j});
        hs.insert({c.i, c.j + 1});
        vs.insert({c.i, c.j});
        vs.insert({c.i + 1, c.j});
    }
    std::vector<GPoint> pts;
    std::map<std::pair<long long, long long>, int> corner;
    auto corner_id = [&](long long i, long long j) {
        auto it = corner.find({i, j});
        if (it != corner.end()) return it->second;
        int id = static_cast<int>(pts.size());
        pts.push_back({static_cast<long double>(i), static_cast<long double>(j)});
        HVertexInfo inf;
        inf.kind = HKind::Corner;
        inf.corner = {i, j};
        H.info.push_back(inf);
        corner.emplace(std::make_pair(i, j), id);
        return id;
    };
    for (auto [i, j] : hs) {
        corner_id(i, j);
        corner_id(i + 1, j);
    }
    for (auto [i, j] : vs) {
        corner_id(i, j);
        corner_id(i, j + 1);
    }
    H.h_of_g.assign(g.n(), -1);
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) <= 2) {
            H.h_of_g[v] = static_cast<int>(pts.size());
            pts.push_back(map.gpos[v]);
            HVertexInfo inf;
            inf.kind = HKind::GVertex;
            inf.g_vertex = v;
            H.info.push_back(inf);
        }
    std::vector<int> low;
    for (int e = 0; e < g.m(); ++e)
        if (g.degree(g.edges[e].first) <= 2 && g.degree(g.edges[e].second) <= 2) low.push_back(e);
    std::map<std::pair<long long, long long>, std::vector<std::pair<long double, int>>> hsplit, vsplit;
    std::map<int, std::vector<std::pair<long double, int>>> esplit;
    auto cross_vertex = [&](GPoint p, int ea, int eb) {
        int id = static_cast<int>(pts.size());
        pts.push_back(p);
        HVertexInfo inf;
        inf.kind = HKind::Cross;
        inf.edge_a = ea;
        inf.edge_b = eb;
        H.info.push_back(inf);
        return id;
    };
    for (int e : low) {
        GPoint a = map.gpos[g.edges[e].first], b = map.gpos[g.edges[e].second];
        for (int axis = 0; axis < 2; ++axis) {
            long double a0 = axis == 0 ? a.x : a.y, b0 = axis == 0 ? b.x : b.y;
            long double a1 = axis == 0 ? a.y : a.x, b1 = axis == 0 ? b.y : b.x;
            long double lo = std::min(a0, b0), hi = std::max(a0, b0);
            for (long long k = static_cast<long long>(std::floor(lo)) + 1; k < hi; ++k) {
                if (k <= lo) continue;
                long double t = (k - a0) / (b0 - a0);
                long double o = a1 + t * (b1 - a1);
                long long fl = static_cast<long long>(std::floor(o));
                if (axis == 0) {
                    if (!vs.count({k, fl})) continue;
                    int id = cross_vertex({static_cast<long double>(k), o}, e, -1);
                    vsplit[{k, fl}].push_back({o - fl, id});
                    esplit[e].push_back({t, id});
                } else {
                    if (!hs.count({fl, k})) continue;
                    int id = cross_vertex({o, static_cast<long double>(k)}, e, -1);
                    hsplit[{fl, k}].push_back({o - fl, id});
                    esplit[e].push_back({t, id});
                }
            }
        }
    }
    std::vector<char> is_low(g.m(), 0);
    for (int e : low) is_low[e] = 1;
    for (const auto& x : find_crossings(g)) {
        if (!is_low[x.edge_a] || !is_low[x.edge_b]) continue;
        auto [a1, a2] = g.edges[x.edge_a];
        auto [b1, b2] = g.edges[x.edge_b];
        auto tu = segment_params(map.gpos[a1], map.gpos[a2], map.gpos[b1], map.gpos[b2], 0.0L);
        require(tu.has_value(), "crossing of low edges not confirmed in grid space");
        GPoint p = map.gpos[a1] + tu->first * (map.gpos[a2] - map.gpos[a1]);
        int id = cross_vertex(p, x.edge_a, x.edge_b);
        esplit[x.edge_a].push_back({tu->first, id});
        esplit[x.edge_b].push_back({tu->second, id});
    }
    std::vector<std::pair<int, int>> edges;
    auto chain = [&](int first, std::vector<std::pair<long double, int>> mids, int last, EKind kind, int ge) {
        std::sort(mids.begin(), mids.end());
        int prev = first;
        for (auto& [t, id] : mids) {
            edges.push_back({prev, id});
            H.ekind.push_back(kind);
            H.g_edge.push_back(ge);
            prev = id;
        }
        edges.push_back({prev, last});
        H.ekind.push_back(kind);
        H.g_edge.push_back(ge);
    };
    for (auto [i, j] : hs) {
        auto it = hsplit.find({i, j});
        chain(corner_id(i, j), it == hsplit.end() ? std::vector<std::pair<long double, int>>{} : it->second,
              corner_id(i + 1, j), EKind::Side, -1);
    }
    for (auto [i, j] : vs) {
        auto it = vsplit.find({i, j});
        chain(corner_id(i, j), it == vsplit.end() ? std::vector<std::pair<long double, int>>{} : it->second,
              corner_id(i, j + 1), EKind::Side, -1);
    }
    for (int e : low) {
        auto it = esplit.find(e);
        chain(H.h_of_g[g.edges[e].first], it == esplit.end() ? std::vector<std::pair<long double, int>>{} : it->second,
              H.h_of_g[g.edges[e].second], EKind::GEdge, e);
    }
    H.graph = PlaneGraph::from_coords(pts, edges);
    // base vertices per cell
    std::map<CellId, int> base;
    for (int v = 0; v < H.graph.n(); ++v)
        if (H.info[v].kind != HKind::Cross)
            for (const auto& c : incident_cells(H.graph.pos[v])) ++base[c];
    for (auto& [c, k] : base) H.max_base_per_cell = std::max(H.max_base_per_cell, k);
    auto bad = plane_crossings(H.graph);
    if (!bad.empty()) throw InvariantError("sparsifier is not plane: " + std::to_string(bad.size()) + " crossings");
    return H;
}

std::vector<std::pair<int, int>> plane_crossings(const PlaneGraph& h, const std::vector<EKind>* kinds) {
    std::map<std::pair<long long, long long>, std::vector<int>> bucket;
    for (int e = 0; e < h.m(); ++e) {
        if (!geometric(kinds, e)) continue;
        auto bb = bbox_of(h.pos[h.edges[e].first], h.pos[h.edges[e].second]);
        for (long long i = static_cast<long long>(std::floor(bb.x0 - kEps)); i <= static_cast<long long>(std::floor(bb.x1 + kEps)); ++i)
            for (long long j = static_cast<long long>(std::floor(bb.y0 - kEps)); j <= static_cast<long long>(std::floor(bb.y1 + kEps)); ++j)
                bucket[{i, j}].push_back(e);
    }
    std::set<std::pair<int, int>> out;
    for (auto& [key, es] : bucket)
        for (std::size_t x = 0; x < es.size(); ++x)
            for (std::size_t y = x + 1; y < es.size(); ++y) {
                int e = es[x], f = es[y];
                auto [a, b] = h.edges[e];
                auto [c, d] = h.edges[f];
                if (a == c || a == d || b == c || b == d) continue;
                GPoint A = h.pos[a], B = h.pos[b], C = h.pos[c], D = h.pos[d];
                bool meet = segment_params(A, B, C, D, 0.0L).has_value() || point_segment_distance(A, C, D) < kEps ||
                            point_segment_distance(B, C, D) < kEps || point_segment_distance(C, A, B) < kEps ||
                            point_segment_distance(D, A, B) < kEps;
                if (meet) out.insert(std::minmax(e, f));
            }
    return {out.begin(), out.end()};
}

Contracted contract_to_h3(const PlaneGraph& h) {
    int n = h.n();
    Contracted out;
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = h.degree(v);
    std::vector<char> removed(n, 0), keep(n, 0), handled(n, 0);
    out.dangling_of_vertex.assign(n, -1);
    auto other = [&](int x, int din) {  // dart leaving x that is not twin(din)
        int back = PlaneGraph::twin(din);
        return h.rot[x][0] == back ? h.rot[x][1] : h.rot[x][0];
    };
    for (int v = 0; v < n; ++v) {
        if (deg[v] != 1 || removed[v] || handled[v]) continue;
        std::vector<int> path{v};
        int d = h.rot[v][0];
        int x = h.head(d);
        while (deg[x] == 2) {
            path.push_back(x);
            d = other(x, d);
            x = h.head(d);
        }
        path.push_back(x);
        DanglingChain ch;
        if (deg[x] == 1) {
            if (path.front() < path.back()) std::reverse(path.begin(), path.end());
            handled[path.back()] = 1;
            keep[path.back()] = 1;
        }
        ch.vertices = path;
        ch.anchor = path.back();
        int idx = static_cast<int>(out.dangling.size());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            removed[path[i]] = 1;
            out.dangling_of_vertex[path[i]] = idx;
        }
        handled[path.front()] = 1;
        out.dangling.push_back(std::move(ch));
    }
    for (int v = 0; v < n; ++v)
        if (!removed[v] && (deg[v] >= 3 || deg[v] == 0)) keep[v] = 1;
    auto live = [&](int d) { return !removed[h.head(d)]; };
    auto walk = [&](int d) {
        std::vector<int> darts{d};
        int x = h.head(d);
        while (!keep[x]) {
            require(deg[x] == 2, "chain vertex of degree != 2");
            d = other(x, d);
            darts.push_back(d);
            x = h.head(d);
        }
        return darts;
    };
    // loops: promote the middle interior vertex
    for (int v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        for (int d : h.rot[v]) {
            if (!live(d)) continue;
            auto darts = walk(d);
            if (h.head(darts.back()) == v && darts.size() >= 2) keep[h.head(darts[(darts.size() - 1) / 2])] = 1;
        }
    }
    // pure cycles: lowest id and the vertex halfway around
    std::vector<char> seen(n, 0);
    for (int v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        seen[v] = 1;
        for (int d : h.rot[v])
            if (live(d))
                for (int x : walk(d)) seen[h.head(x)] = 1;
    }
    for (int v = 0; v < n; ++v) {
        if (seen[v] || removed[v] || keep[v]) continue;
        std::vector<int> cyc{v};
        int d = h.rot[v][0];
        int x = h.head(d);
        while (x != v) {
            cyc.push_back(x);
            d = other(x, d);
            x = h.head(d);
        }
        for (int y : cyc) seen[y] = 1;
        keep[v] = 1;  // v is the lowest id: smaller ids were seen earlier
        keep[cyc[cyc.size() / 2]] = 1;
    }
    out.index_of.assign(n, -1);
    for (int v = 0; v < n; ++v)
        if (keep[v]) {
            out.index_of[v] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(v);
        }
    out.chain_of_dart.assign(2 * h.m(), -1);
    out.pos_in_chain.assign(2 * h.m(), -1);
    out.chain_of_vertex.assign(n, -1);
    PlaneGraph& G = out.graph;
    G.rot.assign(out.vertices.size(), {});
    for (int v : out.vertices) {
        for (int d : h.rot[v]) {
            if (!live(d) || out.chain_of_dart[d] >= 0) continue;
            auto darts = walk(d);
            int idx = static_cast<int>(out.chains.size());
            int end = h.head(darts.back());
            require(end != v || darts.size() < 2, "loop chain survived");
            G.edges.push_back({out.index_of[v], out.index_of[end]});
            int L = static_cast<int>(darts.size());
            for (int i = 0; i < L; ++i) {
                out.chain_of_dart[darts[i]] = 2 * idx;
                out.pos_in_chain[darts[i]] = i;
                out.chain_of_dart[PlaneGraph::twin(darts[i])] = 2 * idx + 1;
                out.pos_in_chain[PlaneGraph::twin(darts[i])] = L - 1 - i;
                if (i + 1 < L) out.chain_of_vertex[h.head(darts[i])] = idx;
            }
            out.chains.push_back(std::move(darts));
        }
    }
    for (std::size_t i = 0; i < out.vertices.size(); ++i)
        for (int d : h.rot[out.vertices[i]])
            if (out.chain_of_dart[d] >= 0) G.rot[i].push_back(out.chain_of_dart[d]);
    for (int v : out.vertices) {
        G.c.push_back(v < static_cast<int>(h.c.size()) ? h.c[v] : 1.0);
        G.b.push_back(v < static_cast<int>(h.b.size()) ? h.b[v] : 0.0);
        if (!h.pos.empty()) G.pos.push_back(h.pos[v]);
    }
    G.finalize();
    return out;
}

std::vector<int> uncontract_edges(const Contracted& h3) {
    std::vector<int> out;
    for (const auto& ch : h3.chains)
        for (int d : ch) out.push_back(PlaneGraph::edge_of(d));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CellId> incident_cells(GPoint p) {
    std::set<CellId> s;
    for (int dx = -1; dx <= 1; dx += 2)
        for (int dy = -1; dy <= 1; dy += 2) s.insert(cell_at({p.x + dx * kEps, p.y + dy * kEps}));
    return {s.begin(), s.end()};
}

double h_weight_at(GPoint p, const GridMap& map, int alpha) {
    std::set<CellId> cells;
    for (const auto& c : incident_cells(p))
        for (const auto& d : neighbourhood(c, alpha)) cells.insert(d);
    double w = 1;
    for (const auto& c : cells) w += map.clique_weight(c);
    return w;
}

std::vector<double> h_weights(const PlaneGraph& h, const GridMap& map, int alpha) {
    std::vector<double> w(h.n());
    for (int v = 0; v < h.n(); ++v) w[v] = h_weight_at(h.pos[v], map, alpha);
    return w;
}

bool face_contains(const PlaneGraph& h, int face, GPoint p) {
    for (int d : h.faces[face])
        if (orient(h.pos[h.tail(d)], h.pos[h.head(d)], p) <= 0) return false;
    return true;
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

constexpr long double kSlope = 0.0123456789L;

// Ray shooting toward +x with a small irrational-looking slope.
struct RayIndex {
    const PlaneGraph& h;
    std::map<long long, std::vector<int>> rows;
    long long max_row = 0;
    explicit RayIndex(const PlaneGraph& g) : h(g) {
        bool first = true;
        for (int e = 0; e < h.m(); ++e) {
            auto bb = bbox_of(h.pos[h.edges[e].first], h.pos[h.edges[e].second]);
            long long r0 = static_cast<long long>(std::floor(bb.y0)), r1 = static_cast<long long>(std::floor(bb.y1));
            for (long long r = r0; r <= r1; ++r) rows[r].push_back(e);
            max_row = first ? r1 : std::max(max_row, r1);
            first = false;
        }
    }
    // nearest dart hit whose left side faces the ray origin; -1 if none
    int shoot(GPoint p, const std::vector<int>* comp, int skip_comp) const {
        long double best = INFINITY;
        int best_e = -1;
        for (auto it = rows.lower_bound(static_cast<long long>(std::floor(p.y))); it != rows.end(); ++it) {
            if (best_e >= 0 && it->first > static_cast<long long>(std::floor(p.y + kSlope * best))) break;
            for (int e : it->second) {
                auto [a, b] = h.edges[e];
                if (comp && (*comp)[a] == skip_comp) continue;
                GPoint A = h.pos[a], B = h.pos[b];
                GPoint dir{1, kSlope}, s = B - A;
                long double den = cross(dir, s);
                if (std::fabs(den) < 1e-18L) continue;
                GPoint ap = A - p;
                long double lam = cross(ap, s) / den;
                long double mu = cross(ap, dir) / den;
                if (lam <= 1e-12L || mu < 0 || mu > 1) continue;
                if (lam < best) {
                    best = lam;
                    best_e = e;
                }
            }
        }
        if (best_e < 0) return -1;
        auto [a, b] = h.edges[best_e];
        return orient(h.pos[a], h.pos[b], p) > 0 ? 2 * best_e : 2 * best_e + 1;
    }
};

long double walk_area(const PlaneGraph& h, const std::vector<int>& w) {
    long double s = 0;
    for (int d : w) s += cross(h.pos[h.tail(d)], h.pos[h.head(d)]);
    return s / 2;
}

// rpos refresh after a local insertion
void refresh(PlaneGraph& P, int v) {
    P.rpos.resize(2 * P.m(), -1);
    for (int i = 0; i < static_cast<int>(P.rot[v].size()); ++i) P.rpos[P.rot[v][i]] = i;
}

std::vector<int> walk_from(const PlaneGraph& P, int d) {
    std::vector<int> w;
    int x = d;
    do {
        w.push_back(x);
        x = P.next(x);
    } while (x != d);
    return w;
}

struct Corner {
    int v;
    int out;  // outgoing dart, -1 for an isolated vertex
    int in;   // incoming dart
};

long double angle_of(const PlaneGraph& P, int d) {
    GPoint q = P.pos[P.head(d)] - P.pos[P.tail(d)];
    return std::atan2(q.y, q.x);
}

bool in_wedge(const PlaneGraph& P, const Corner& c, GPoint target) {
    if (c.out < 0) return true;
    const long double two_pi = 2 * std::acos(-1.0L);
    GPoint q = target - P.pos[c.v];
    long double th = std::atan2(q.y, q.x);
    long double a0 = angle_of(P, c.out), a1 = angle_of(P, PlaneGraph::twin(c.in));
    auto mod = [&](long double x) {
        x = std::fmod(x, two_pi);
        return x < 0 ? x + two_pi : x;
    };
    long double span = c.out == PlaneGraph::twin(c.in) ? two_pi : mod(a1 - a0);
    long double del = mod(th - a0);
    return del > 1e-12L && del < span - 1e-12L;
}

std::vector<Corner> corners_of(const PlaneGraph& P, const std::vector<int>& w) {
    std::vector<Corner> cs;
    for (std::size_t i = 0; i < w.size(); ++i) cs.push_back({P.tail(w[i]), w[i], w[(i + w.size() - 1) % w.size()]});
    return cs;
}

bool convex_walk(const PlaneGraph& P, const std::vector<int>& w) {
    if (w.size() < 3) return false;
    std::set<int> vs;
    for (int d : w) vs.insert(P.tail(d));
    if (vs.size() != w.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        int a = P.tail(w[(i + w.size() - 1) % w.size()]), b = P.tail(w[i]), c = P.head(w[i]);
        if (orient(P.pos[a], P.pos[b], P.pos[c]) <= kEps) return false;
    }
    return true;
}

bool adjacent_in(const PlaneGraph& P, int x, int y) {
    for (int d : P.rot[x])
        if (P.head(d) == y) return true;
    return false;
}

}  // namespace

Carrier build_carrier(const MapSparsifier& H, const UnitDiskGraph& g, const GridMap& map) {
    Carrier K;
    K.graph = H.graph;
    K.info = H.info;
    K.ekind = H.ekind;
    K.g_edge = H.g_edge;
    K.k_of_g = H.h_of_g;
    PlaneGraph& P = K.graph;
    int n = P.n();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> st{s};
        comp[s] = ncomp;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int d : P.rot[v])
                if (comp[P.head(d)] < 0) {
                    comp[P.head(d)] = ncomp;
                    st.push_back(P.head(d));
                }
        }
        ++ncomp;
    }
    int W = static_cast<int>(P.faces.size());
    // union-find nodes: walks, then isolated vertices (by vertex id), then the global outer face
    UnionFind uf(W + n + 1);
    const int GLOBAL = W + n;
    std::vector<int> outer(ncomp, -1), right(ncomp, -1);
    std::vector<long double> area(W);
    for (int f = 0; f < W; ++f) {
        area[f] = walk_area(P, P.faces[f]);
        int c = comp[P.tail(P.faces[f][0])];
        if (outer[c] < 0 || area[f] < area[outer[c]]) outer[c] = f;
    }
    for (int v = 0; v < n; ++v) {
        int c = comp[v];
        if (right[c] < 0 || P.pos[v].x > P.pos[right[c]].x ||
            (P.pos[v].x == P.pos[right[c]].x && P.pos[v].y > P.pos[right[c]].y))
            right[c] = v;
    }
    RayIndex rays(P);
    for (int c = 0; c < ncomp; ++c) {
        int node = outer[c] >= 0 ? outer[c] : W + right[c];
        int hit = rays.shoot(P.pos[right[c]], &comp, c);
        uf.unite(node, hit >= 0 ? P.dface[hit] : GLOBAL);
    }
    auto locate = [&](GPoint q) {
        int hit = rays.shoot(q, nullptr, -1);
        return uf.find(hit >= 0 ? P.dface[hit] : GLOBAL);
    };
    // traversed classes
    std::map<int, GPoint> traversed;  // class -> a witness point
    std::map<std::pair<long long, long long>, std::vector<int>> cell_edges;
    for (int e = 0; e < P.m(); ++e) {
        auto bb = bbox_of(P.pos[P.edges[e].first], P.pos[P.edges[e].second]);
        for (long long i = static_cast<long long>(std::floor(bb.x0 - kEps)); i <= static_cast<long long>(std::floor(bb.x1 + kEps)); ++i)
            for (long long j = static_cast<long long>(std::floor(bb.y0 - kEps)); j <= static_cast<long long>(std::floor(bb.y1 + kEps)); ++j)
                cell_edges[{i, j}].push_back(e);
    }
    for (int v = 0; v < g.n(); ++v)
        if (K.k_of_g[v] < 0) traversed.emplace(locate(map.gpos[v]), map.gpos[v]);
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        if (g.degree(u) <= 2 && g.degree(v) <= 2) continue;
        GPoint a = map.gpos[u], b = map.gpos[v];
        std::vector<long double> ts{0, 1};
        std::set<int> cand;
        for (const auto& c : cells_on_segment(a, b)) {
            auto it = cell_edges.find({c.i, c.j});
            if (it != cell_edges.end()) cand.insert(it->second.begin(), it->second.end());
        }
        for (int f : cand) {
            auto [x, y] = P.edges[f];
            for (int z : {x, y})
                if (!(K.info[z].kind == HKind::GVertex && (K.info[z].g_vertex == u || K.info[z].g_vertex == v)) &&
                    point_segment_distance(P.pos[z], a, b) < kEps)
                    throw InputError("three edges meet at a point near G-edge " + std::to_string(e));
            auto tu = segment_params(a, b, P.pos[x], P.pos[y], 0.0L);
            if (tu) ts.push_back(tu->first);
        }
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            GPoint mid = a + ((ts[i] + ts[i + 1]) / 2) * (b - a);
            traversed.emplace(locate(mid), mid);
        }
    }
    require(!traversed.count(uf.find(GLOBAL)), "G content in the unbounded face");
    // members of each class
    std::map<int, std::vector<int>> walks_of, iso_of;
    for (int f = 0; f < W; ++f) walks_of[uf.find(f)].push_back(f);
    for (int v = 0; v < n; ++v)
        if (P.rot[v].empty()) iso_of[uf.find(W + v)].push_back(v);
    std::vector<char> tdart(2 * P.m(), 0);
    auto add_diag = [&](const Corner& a, const Corner& b) {
        int e = P.add_edge(a.v, a.out, b.v, b.out);
        K.ekind.push_back(EKind::Diagonal);
        K.g_edge.push_back(-1);
        refresh(P, a.v);
        refresh(P, b.v);
        tdart.resize(2 * P.m(), 0);
        tdart[2 * e] = tdart[2 * e + 1] = 1;
        ++K.diagonals;
        return e;
    };
    for (auto& [cls, witness] : traversed) {
        CellId cell = cell_at(witness);
        std::vector<std::vector<int>> members;  // walks; an isolated vertex is {-1 - v}
        for (int f : walks_of[cls]) members.push_back(P.faces[f]);
        for (int v : iso_of[cls]) members.push_back({-1 - v});
        for (auto& w : members)
            for (int d : w) {
                if (d >= 0) tdart[d] = 1;
                GPoint p = d >= 0 ? P.pos[P.tail(d)] : P.pos[-1 - d];
                if (p.x < cell.i - 1e-7L || p.x > cell.i + 1 + 1e-7L || p.y < cell.j - 1e-7L || p.y > cell.j + 1 + 1e-7L)
                    throw InvariantError("traversed face leaves its cell");
            }
        auto member_corners = [&](const std::vector<int>& w) {
            if (w.size() == 1 && w[0] < 0) return std::vector<Corner>{{-1 - w[0], -1, -1}};
            return corners_of(P, w);
        };
        auto valid = [&](const Corner& a, const Corner& b, const std::vector<std::vector<int>>& ms) {
            if (a.v == b.v || adjacent_in(P, a.v, b.v)) return false;
            GPoint A = P.pos[a.v], B = P.pos[b.v];
            if (!in_wedge(P, a, B) || !in_wedge(P, b, A)) return false;
            for (const auto& w : ms)
                for (int d : w) {
                    int z = d >= 0 ? P.tail(d) : -1 - d;
                    if (z != a.v && z != b.v && point_segment_distance(P.pos[z], A, B) < kEps) return false;
                    if (d < 0) continue;
                    int x = P.tail(d), y = P.head(d);
                    if (x == a.v || x == b.v || y == a.v || y == b.v) continue;
                    if (segment_params(A, B, P.pos[x], P.pos[y], 0.0L)) return false;
                }
            return true;
        };
        while (members.size() > 1) {
            long double best = INFINITY;
            Corner ba{}, bb{};
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    for (const auto& ca : member_corners(members[i]))
                        for (const auto& cb : member_corners(members[j])) {
                            long double l = dist2(P.pos[ca.v], P.pos[cb.v]);
                            if (l < best && valid(ca, cb, members)) {
                                best = l;
                                ba = ca;
                                bb = cb;
                                bi = i;
                                bj = j;
                            }
                        }
            if (!std::isfinite(best)) throw InvariantError("no diagonal joins the boundary components of a face");
            int e = add_diag(ba, bb);
            members.erase(members.begin() + bj);
            members.erase(members.begin() + bi);
            members.push_back(walk_from(P, 2 * e));
        }
        std::vector<std::vector<int>> work{members[0]};
        if (members[0].size() == 1 && members[0][0] < 0) work.clear();  // lone point in a face: impossible in a cell
        while (!work.empty()) {
            auto w = work.back();
            work.pop_back();
            if (convex_walk(P, w)) continue;
            auto cs = corners_of(P, w);
            long double best = INFINITY;
            Corner ba{}, bb{};
            std::vector<std::vector<int>> ms{w};
            for (std::size_t i = 0; i < cs.size(); ++i)
                for (std::size_t j = i + 1; j < cs.size(); ++j) {
                    long double l = dist2(P.pos[cs[i].v], P.pos[cs[j].v]);
                    if (l < best && valid(cs[i], cs[j], ms)) {
                        best = l;
                        ba = cs[i];
                        bb = cs[j];
                    }
                }
            if (!std::isfinite(best)) throw InvariantError("no admissible diagonal in a non-convex face");
            int e = add_diag(ba, bb);
            work.push_back(walk_from(P, 2 * e));
            work.push_back(walk_from(P, 2 * e + 1));
        }
    }
    // bridges in untraversed faces
    std::set<int> classes;
    for (int f = 0; f < W; ++f) classes.insert(uf.find(f));
    for (int v = 0; v < n; ++v)
        if (P.rot[v].empty()) classes.insert(uf.find(W + v));
    for (int cls : classes) {
        if (traversed.count(cls)) continue;
        const auto& ws = walks_of[cls];
        const auto& is = iso_of[cls];
        if (ws.size() + is.size() <= 1) continue;
        int anchor_v, anchor_d;
        std::size_t start = 0;
        if (!ws.empty()) {
            anchor_d = P.faces[ws[0]][0];
            anchor_v = P.tail(anchor_d);
            start = 1;
        } else {
            anchor_v = is[0];
            anchor_d = -1;
        }
        auto bridge = [&](int v, int d) {
            int e = P.add_edge(anchor_v, anchor_d, v, d);
            K.ekind.push_back(EKind::Bridge);
            K.g_edge.push_back(-1);
            refresh(P, anchor_v);
            refresh(P, v);
            ++K.bridges;
            if (anchor_d < 0) anchor_d = 2 * e;
        };
        for (std::size_t i = start; i < ws.size(); ++i) bridge(P.tail(P.faces[ws[i]][0]), P.faces[ws[i]][0]);
        for (std::size_t i = ws.empty() ? 1 : 0; i < is.size(); ++i) bridge(is[i], -1);
    }
    tdart.resize(2 * P.m(), 0);
    P.finalize();
    require(P.is_connected(), "carrier is disconnected");
    int F = static_cast<int>(P.faces.size());
    K.face_traversed.assign(F, 0);
    K.face_cell.assign(F, {});
    for (int f = 0; f < F; ++f) {
        bool t = false;
        for (int d : P.faces[f]) t = t || tdart[d];
        if (!t) continue;
        require(convex_walk(P, P.faces[f]), "traversed face is not convex");
        K.face_traversed[f] = 1;
        GPoint cen{0, 0};
        for (int d : P.faces[f]) cen = cen + P.pos[P.tail(d)];
        cen = (1.0L / P.faces[f].size()) * cen;
        K.face_cell[f] = cell_at(cen);
        K.traversed_in_cell[K.face_cell[f]].push_back(f);
    }
    K.face_of_point.assign(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        if (K.k_of_g[v] >= 0) continue;
        for (int f : K.traversed_in_cell[map.cell_of[v]])
            if (face_contains(P, f, map.gpos[v])) K.face_of_point[v] = f;
        require(K.face_of_point[v] >= 0, "G-vertex not located in a traversed face");
    }
    return K;
}

std::string sparsifier_json(const MapSparsifier& h, const GridMap& map) {
    nlohmann::json j;
    j["alpha"] = h.alpha;
    j["ell"] = h.ell;
    for (int v = 0; v < h.graph.n(); ++v) {
        Point p = map.from_grid(h.graph.pos[v]);
        const auto& inf = h.info[v];
        const char* kind = inf.kind == HKind::Corner ? "corner" : inf.kind == HKind::GVertex ? "g" : "cross";
        j["vertices"].push_back({{"id", v}, {"x", p.x}, {"y", p.y}, {"kind", kind}, {"g", inf.g_vertex}});
    }
    for (int e = 0; e < h.graph.m(); ++e) {
        const char* kind = h.ekind[e] == EKind::Side ? "side" : "g_edge";
        j["edges"].push_back({{"u", h.graph.edges[e].first}, {"v", h.graph.edges[e].second}, {"kind", kind}, {"g_edge", h.g_edge[e]}});
    }
    for (const auto& c : h.region) j["region"].push_back({c.i, c.j});
    return j.dump();
}

std::string plane_svg(const PlaneGraph& h, const std::vector<EKind>* kinds) {
    long double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
    for (const auto& p : h.pos) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    if (h.pos.empty()) x0 = y0 = 0, x1 = y1 = 1;
    const double s = 40;
    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << (x1 - x0 + 2) * s << "' height='" << (y1 - y0 + 2) * s << "'>\n";
    auto X = [&](long double x) { return static_cast<double>((x - x0 + 1) * s); };
    auto Y = [&](long double y) { return static_cast<double>((y1 - y + 1) * s); };
    for (int e = 0; e < h.m(); ++e) {
        if (!geometric(kinds, e)) continue;
        const auto& a = h.pos[h.edges[e].first];
        const auto& b = h.pos[h.edges[e].second];
        const char* col = !kinds ? "black" : (*kinds)[e] == EKind::Side ? "#999" : (*kinds)[e] == EKind::GEdge ? "#c00" : "#06c";
        o << "<line x1='" << X(a.x) << "' y1='" << Y(a.y) << "' x2='" << X(b.x) << "' y2='" << Y(b.y) << "' stroke='" << col
          << "' stroke-width='1'/>\n";
    }
    for (const auto& p : h.pos) o << "<circle cx='" << X(p.x) << "' cy='" << Y(p.y) << "' r='2'/>\n";
    o << "</svg>\n";
    return o.str();
}

}  // namespace udgcp
