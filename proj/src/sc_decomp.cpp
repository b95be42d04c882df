#include "udgcp/sc_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace udgcp {

const char* sc_kind_name(SCKind k) {
    switch (k) {
        case SCKind::Surface: return "surface";
        case SCKind::Atom: return "atom";
        case SCKind::Area: return "area";
        case SCKind::ChainEdge: return "chain-edge";
        case SCKind::DanglingEdge: return "dangling-edge";
    }
    return "?";
}

namespace {

constexpr long double kTol = 1e-12L;

int find_dart(const PlaneGraph& K, int a, int b) {
    for (int d : K.rot[a])
        if (K.head(d) == b) return d;
    throw InvariantError("carrier edge missing between chain vertices");
}

struct Builder {
    const SurfaceDecomposition& sd;
    const Carrier& k;
    const Contracted& k3;
    SCDecomposition& sc;
    std::vector<std::vector<int>> dangling_of_atom;  // index A for the single-vertex plane

    int add(SCKind kind, int parent) {
        SCNode nd;
        nd.kind = kind;
        nd.parent = parent;
        nd.depth = parent >= 0 ? sc.nodes[parent].depth + 1 : 0;
        sc.nodes.push_back(std::move(nd));
        return static_cast<int>(sc.nodes.size()) - 1;
    }

    int atom_count() const { return sd.single_vertex ? 0 : static_cast<int>(sd.at.tri.faces.size()); }

    void assign_dangling() {
        const PlaneGraph& K = k.graph;
        dangling_of_atom.assign(atom_count() + 1, {});
        for (int i = 0; i < static_cast<int>(k3.dangling.size()); ++i) {
            const auto& D = k3.dangling[i];
            if (sd.single_vertex) {
                dangling_of_atom[atom_count()].push_back(i);
                continue;
            }
            int a = D.anchor;
            int d = find_dart(K, a, D.vertices[D.vertices.size() - 2]);
            // clockwise to the first K3 dart; the chain sits in that dart's wedge
            int x = d;
            do x = K.rot_prev(x);
            while (k3.chain_of_dart[x] < 0 && x != d);
            require(k3.chain_of_dart[x] >= 0, "dangling chain anchored away from K3");
            dangling_of_atom[sd.at.atom_of_dart[k3.chain_of_dart[x]]].push_back(i);
        }
    }

    std::vector<int> area_closure(int x) const {
        if (x < 0) return {k3.vertices[0]};
        int d3 = sd.at.atom_dart[x];
        std::vector<int> c{k3.vertices[k3.graph.tail(d3)], k3.vertices[k3.graph.head(d3)]};
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }

    int make_leaf(SCKind kind, int parent, int atom, int kedge) {
        int id = add(kind, parent);
        SCNode& nd = sc.nodes[id];
        nd.atom = atom;
        nd.k_edge = kedge;
        if (kedge >= 0) {
            auto [a, b] = k.graph.edges[kedge];
            nd.closure = {std::min(a, b), std::max(a, b)};
            sc.leaf_of_kedge[kedge] = id;
        } else {
            nd.closure = area_closure(atom);
            if (atom >= 0) sc.area_of_atom[atom] = id;
        }
        return id;
    }

    int lift_atom(int x, int parent) {
        const PlaneGraph& K = k.graph;
        std::vector<std::pair<SCKind, int>> items;
        for (int i : dangling_of_atom[x < 0 ? atom_count() : x]) {
            const auto& vs = k3.dangling[i].vertices;
            for (std::size_t j = 0; j + 1 < vs.size(); ++j)
                items.push_back({SCKind::DanglingEdge, PlaneGraph::edge_of(find_dart(K, vs[j], vs[j + 1]))});
        }
        if (x >= 0) {
            int d3 = sd.at.atom_dart[x];
            if (d3 % 2 == 0)
                for (int d : k3.chains[d3 / 2]) items.push_back({SCKind::ChainEdge, PlaneGraph::edge_of(d)});
        }
        if (items.empty()) return make_leaf(SCKind::Area, parent, x, -1);
        int top = add(SCKind::Atom, parent);
        sc.nodes[top].atom = x;
        int cur = top;
        for (std::size_t i = 0; i < items.size(); ++i) {
            int l = make_leaf(items[i].first, cur, x, items[i].second);
            int r;
            if (i + 1 == items.size()) {
                r = make_leaf(SCKind::Area, cur, x, -1);
            } else {
                r = add(SCKind::Atom, cur);
                sc.nodes[r].atom = x;
            }
            sc.nodes[cur].left = l;
            sc.nodes[cur].right = r;
            cur = r;
        }
        return top;
    }

    int lift_atoms(const std::vector<int>& atoms, std::size_t from, int parent, int sd_node) {
        if (from + 1 == atoms.size()) return lift_atom(atoms[from], parent);
        int id = add(SCKind::Surface, parent);
        sc.nodes[id].sd_node = sd_node;
        if (sd_node < 0) sc.nodes[id].atoms.assign(atoms.begin() + static_cast<long>(from), atoms.end());
        int l = lift_atom(atoms[from], id);
        int r = lift_atoms(atoms, from + 1, id, -1);
        sc.nodes[id].left = l;
        sc.nodes[id].right = r;
        return id;
    }

    int lift(int s, int parent) {
        const SDNode& nd = sd.nodes[s];
        if (nd.left >= 0) {
            int id = add(SCKind::Surface, parent);
            sc.nodes[id].sd_node = s;
            int l = lift(nd.left, id);
            int r = lift(nd.right, id);
            sc.nodes[id].left = l;
            sc.nodes[id].right = r;
            return id;
        }
        if (sd.single_vertex) return lift_atom(-1, parent);
        std::vector<int> atoms = nd.atoms;
        return lift_atoms(atoms, 0, parent, s);
    }
};

void euler(SCDecomposition& sc) {
    sc.order.clear();
    sc.max_depth = 0;
    std::vector<std::pair<int, bool>> st{{sc.root, false}};
    while (!st.empty()) {
        auto [v, done] = st.back();
        st.pop_back();
        SCNode& nd = sc.nodes[v];
        if (done) {
            nd.tout = static_cast<int>(sc.order.size());
            continue;
        }
        nd.tin = static_cast<int>(sc.order.size());
        sc.max_depth = std::max(sc.max_depth, nd.depth);
        if (nd.left < 0) {
            sc.order.push_back(v);
            nd.tout = nd.tin + 1;
            continue;
        }
        st.push_back({v, true});
        st.push_back({nd.right, false});
        st.push_back({nd.left, false});
    }
}

int lca(const SCDecomposition& sc, int a, int b) {
    while (sc.nodes[a].depth > sc.nodes[b].depth) a = sc.nodes[a].parent;
    while (sc.nodes[b].depth > sc.nodes[a].depth) b = sc.nodes[b].parent;
    while (a != b) a = sc.nodes[a].parent, b = sc.nodes[b].parent;
    return a;
}

}  // namespace

SCDecomposition lift_to_h(const SurfaceDecomposition& sd, const Carrier& k, const Contracted& k3) {
    SCDecomposition sc;
    sc.leaf_of_kedge.assign(k.graph.m(), -1);
    Builder b{sd, k, k3, sc, {}};
    sc.area_of_atom.assign(b.atom_count(), -1);
    b.assign_dangling();
    sc.root = b.lift(sd.root, -1);
    euler(sc);
    return sc;
}

void perturb_to_sc(SCDecomposition& sc, const SurfaceDecomposition& sd, const Carrier& k, const Contracted& k3,
                   const UnitDiskGraph& g, const GridMap& map, int alpha, bool check_containment) {
    const PlaneGraph& K = k.graph;
    const int N = static_cast<int>(sc.nodes.size());
    auto atom_of_k3dart = [&](int x3) { return sd.at.atom_of_dart[x3]; };

    // traversed faces: centroid and sectors
    std::map<int, GPoint> centroid;
    for (int f = 0; f < static_cast<int>(K.faces.size()); ++f) {
        if (!k.face_traversed[f]) continue;
        GPoint c{0, 0};
        for (int d : K.faces[f]) c = c + K.pos[K.tail(d)];
        centroid[f] = (1.0L / K.faces[f].size()) * c;
    }
    auto sector = [&](int f, GPoint p) {
        GPoint c = centroid.at(f);
        for (int d : K.faces[f])
            if (orient(c, K.pos[K.tail(d)], p) >= 0 && orient(c, K.pos[K.head(d)], p) < 0) return d;
        throw InvariantError("point outside every sector of its face");
    };
    auto area_leaf_of_kdart = [&](int d) {
        int x3 = k3.chain_of_dart[d];
        require(x3 >= 0, "traversed face dart outside K3");
        return sc.area_of_atom[atom_of_k3dart(x3)];
    };

    // G-vertices: dense ones by sector, low ones at their carrier vertex
    sc.leaf_of_g.assign(g.n(), -1);
    std::vector<char> holds_points(N, 0);
    for (int v = 0; v < g.n(); ++v) {
        if (k.k_of_g[v] >= 0) continue;
        int f = k.face_of_point[v];
        int leaf = area_leaf_of_kdart(sector(f, map.gpos[v]));
        sc.leaf_of_g[v] = leaf;
        holds_points[leaf] = 1;
    }
    std::vector<std::vector<int>> leaves_at(K.n());
    for (int leaf : sc.order)
        for (int x : sc.nodes[leaf].closure) leaves_at[x].push_back(leaf);
    for (int v = 0; v < g.n(); ++v) {
        int x = k.k_of_g[v];
        if (x < 0) continue;
        int best = -1;
        for (int leaf : leaves_at[x])
            if (best < 0 || std::make_pair(holds_points[leaf], leaf) < std::make_pair(holds_points[best], best))
                best = leaf;
        require(best >= 0, "carrier vertex in no leaf closure");
        sc.leaf_of_g[v] = best;
    }

    // positions along K3 edges
    std::vector<double> vpos(K.n(), 0);
    for (int e3 = 0; e3 < static_cast<int>(k3.chains.size()); ++e3) {
        const auto& ch = k3.chains[e3];
        for (std::size_t i = 0; i + 1 < ch.size(); ++i)
            vpos[K.head(ch[i])] = static_cast<double>(i + 1) / static_cast<double>(ch.size());
    }
    auto through_vertex = [&](int w, int leaf_a, int leaf_b, double t) {
        Crossing c;
        c.t = t;
        if (sc.nodes[leaf_a].atom == sc.nodes[leaf_b].atom) return c;
        if (k3.index_of[w] >= 0) {
            c.tvertex = k3.index_of[w];
        } else if (k3.chain_of_vertex[w] >= 0) {
            c.tedge = k3.chain_of_vertex[w];
            c.pos = vpos[w];
        }
        return c;
    };
    auto along_kedge = [&](int ke, long double s) {  // point at parameter s of carrier edge ke
        int dd = 2 * ke;
        int x3 = k3.chain_of_dart[dd];
        require(x3 >= 0, "crossed edge outside K3");
        if (x3 & 1) {
            dd ^= 1;
            x3 ^= 1;
            s = 1 - s;
        }
        Crossing c;
        c.tedge = x3 / 2;
        c.pos = static_cast<double>((k3.pos_in_chain[dd] + s) / k3.chains[x3 / 2].size());
        return c;
    };

    // carrier edges by cell
    std::map<std::pair<long long, long long>, std::vector<int>> cell_edges;
    for (int e = 0; e < K.m(); ++e) {
        if (k.ekind[e] == EKind::Bridge) continue;
        GPoint a = K.pos[K.edges[e].first], b = K.pos[K.edges[e].second];
        for (long long i = static_cast<long long>(std::floor(std::min(a.x, b.x) - 1e-9L));
             i <= static_cast<long long>(std::floor(std::max(a.x, b.x) + 1e-9L)); ++i)
            for (long long j = static_cast<long long>(std::floor(std::min(a.y, b.y) - 1e-9L));
                 j <= static_cast<long long>(std::floor(std::max(a.y, b.y) + 1e-9L)); ++j)
                cell_edges[{i, j}].push_back(e);
    }
    std::vector<std::vector<int>> kedges_of_g(g.m());
    for (int e = 0; e < K.m(); ++e)
        if (k.g_edge[e] >= 0) kedges_of_g[k.g_edge[e]].push_back(e);

    sc.traces.assign(g.m(), {});
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        EdgeTrace& tr = sc.traces[e];
        auto push = [&](int leaf, Crossing c) {
            if (tr.leaves.back() == leaf) return;
            tr.between.push_back(c);
            tr.leaves.push_back(leaf);
        };
        tr.leaves.push_back(sc.leaf_of_g[u]);
        if (!kedges_of_g[e].empty()) {
            // low edge: a path of carrier edges from u to v
            std::vector<int> pieces = kedges_of_g[e];
            int w = k.k_of_g[u];
            std::vector<char> used(pieces.size(), 0);
            for (std::size_t step = 0; step < pieces.size(); ++step) {
                std::size_t pick = pieces.size();
                for (std::size_t i = 0; i < pieces.size(); ++i)
                    if (!used[i] && (K.edges[pieces[i]].first == w || K.edges[pieces[i]].second == w)) pick = i;
                require(pick < pieces.size(), "low edge pieces do not form a path");
                used[pick] = 1;
                int ke = pieces[pick];
                int leaf = sc.leaf_of_kedge[ke];
                GPoint A = map.gpos[u], B = map.gpos[v];
                double t = static_cast<double>(std::sqrt(dist2(K.pos[w], A) / dist2(B, A)));
                push(leaf, through_vertex(w, tr.leaves.back(), leaf, t));
                w = K.edges[ke].first == w ? K.edges[ke].second : K.edges[ke].first;
            }
            require(w == k.k_of_g[v], "low edge path ends elsewhere");
            push(sc.leaf_of_g[v], through_vertex(w, tr.leaves.back(), sc.leaf_of_g[v], 1.0));
            continue;
        }
        GPoint a = map.gpos[u], b = map.gpos[v];
        int ku = k.k_of_g[u], kv = k.k_of_g[v];
        struct Ev {
            long double t;
            int kedge;         // crossed carrier edge, or -1 for a spoke
            long double s;     // along the crossed edge or spoke
            int spoke = -1;    // aux-triangulation edge
        };
        std::vector<Ev> evs;
        std::set<int> cand, faces;
        for (const auto& c : cells_on_segment(a, b)) {
            auto it = cell_edges.find({c.i, c.j});
            if (it != cell_edges.end()) cand.insert(it->second.begin(), it->second.end());
            auto jt = k.traversed_in_cell.find(c);
            if (jt != k.traversed_in_cell.end()) faces.insert(jt->second.begin(), jt->second.end());
        }
        for (int ke : cand) {
            auto [x, y] = K.edges[ke];
            if (x == ku || x == kv || y == ku || y == kv) continue;
            auto tu = segment_params(a, b, K.pos[x], K.pos[y], 0.0L);
            if (tu && tu->first > kTol && tu->first < 1 - kTol) evs.push_back({tu->first, ke, tu->second});
        }
        for (int f : faces) {
            GPoint c = centroid.at(f);
            for (int d : K.faces[f]) {
                int x = K.tail(d);
                if (k3.index_of[x] < 0 || x == ku || x == kv) continue;
                auto tu = segment_params(a, b, c, K.pos[x], 0.0L);
                if (tu && tu->first > kTol && tu->first < 1 - kTol)
                    evs.push_back({tu->first, -1, tu->second, sd.at.spoke_of_dart[k3.chain_of_dart[d]]});
            }
        }
        std::sort(evs.begin(), evs.end(), [](const Ev& p, const Ev& q) { return p.t < q.t; });
        auto locate = [&](long double t) {
            GPoint p = a + t * (b - a);
            auto it = k.traversed_in_cell.find(cell_at(p));
            if (it != k.traversed_in_cell.end())
                for (int f : it->second)
                    if (face_contains(K, f, p)) return area_leaf_of_kdart(sector(f, p));
            throw InvariantError("G-edge " + std::to_string(e) + " leaves the traversed faces");
        };
        long double prev = 0;
        for (std::size_t i = 0; i <= evs.size(); ++i) {
            long double nxt = i < evs.size() ? evs[i].t : 1;
            int leaf = locate((prev + nxt) / 2);
            if (i == 0) {
                push(leaf, ku >= 0 ? through_vertex(ku, tr.leaves.back(), leaf, 0.0) : Crossing{});
            } else {
                const Ev& ev = evs[i - 1];
                if (ev.kedge >= 0) {
                    int el = sc.leaf_of_kedge[ev.kedge];
                    Crossing c = along_kedge(ev.kedge, ev.s);
                    c.t = static_cast<double>(ev.t);
                    Crossing in = c, out = c;
                    if (sc.nodes[tr.leaves.back()].atom == sc.nodes[el].atom) in = Crossing{c.t};
                    if (sc.nodes[leaf].atom == sc.nodes[el].atom) out = Crossing{c.t};
                    push(el, in);
                    push(leaf, out);
                } else {
                    Crossing c;
                    c.t = static_cast<double>(ev.t);
                    c.tedge = ev.spoke;
                    c.pos = static_cast<double>(ev.s);
                    if (sc.nodes[tr.leaves.back()].atom == sc.nodes[leaf].atom) c = Crossing{c.t};
                    push(leaf, c);
                }
            }
            prev = nxt;
        }
        push(sc.leaf_of_g[v], kv >= 0 ? through_vertex(kv, tr.leaves.back(), sc.leaf_of_g[v], 1.0) : Crossing{1.0});
    }

    // V_t
    for (auto& nd : sc.nodes) {
        nd.gverts.clear();
        nd.cut.clear();
        nd.boundary.clear();
        nd.cells.clear();
        nd.weight = 0;
    }
    for (int v = 0; v < g.n(); ++v) sc.nodes[sc.leaf_of_g[v]].gverts.push_back(v);
    for (int id = N - 1; id >= 0; --id) {
        SCNode& nd = sc.nodes[id];
        if (nd.left < 0) continue;
        const auto& L = sc.nodes[nd.left].gverts;
        const auto& R = sc.nodes[nd.right].gverts;
        nd.gverts.resize(L.size() + R.size());
        std::merge(L.begin(), L.end(), R.begin(), R.end(), nd.gverts.begin());
    }
    // boundary: a vertex is on bd(t) when leaves on both sides hold it in their closure
    for (int x = 0; x < K.n(); ++x) {
        const auto& ls = leaves_at[x];
        if (ls.size() < 2) continue;
        int top = ls[0];
        for (int l : ls) top = lca(sc, top, l);
        for (int l : ls)
            for (int t = l; t != top; t = sc.nodes[t].parent) {
                auto& b = sc.nodes[t].boundary;
                if (!b.empty() && b.back() == x) break;
                b.push_back(x);
            }
    }
    // cut(t): nodes from an endpoint leaf up to, not including, the lca of the trace
    for (int e = 0; e < g.m(); ++e) {
        const auto& ls = sc.traces[e].leaves;
        int top = ls[0];
        for (int l : ls) top = lca(sc, top, l);
        for (int l : {ls.front(), ls.back()})
            for (int t = l; t != top; t = sc.nodes[t].parent) {
                auto& c = sc.nodes[t].cut;
                if (!c.empty() && c.back() == e) break;
                c.push_back(e);
            }
    }
    sc.width = 0;
    for (auto& nd : sc.nodes) {
        std::sort(nd.cut.begin(), nd.cut.end());
        std::sort(nd.boundary.begin(), nd.boundary.end());
        std::set<CellId> cells;
        for (int e : nd.cut) {
            cells.insert(map.cell_of[g.edges[e].first]);
            cells.insert(map.cell_of[g.edges[e].second]);
        }
        nd.cells.assign(cells.begin(), cells.end());
        for (const auto& c : cells) nd.weight += map.clique_weight(c);
        sc.width = std::max(sc.width, nd.weight);
    }
    // C3, C4
    std::map<CellId, std::set<int>> leaves_of_cell;
    sc.c3_cells = 0;
    for (int leaf : sc.order) {
        std::set<CellId> cs;
        for (int v : sc.nodes[leaf].gverts) {
            cs.insert(map.cell_of[v]);
            leaves_of_cell[map.cell_of[v]].insert(leaf);
        }
        sc.c3_cells = std::max(sc.c3_cells, static_cast<int>(cs.size()));
    }
    sc.c4_spread = 0;
    for (const auto& [c, ls] : leaves_of_cell) sc.c4_spread = std::max(sc.c4_spread, static_cast<int>(ls.size()));
    sc.containment_failures = 0;
    if (check_containment) {
        std::vector<std::vector<CellId>> inc(K.n());
        for (int x = 0; x < K.n(); ++x) inc[x] = incident_cells(K.pos[x]);
        for (const auto& nd : sc.nodes)
            for (int e : nd.cut) {
                CellId cu = map.cell_of[g.edges[e].first], cv = map.cell_of[g.edges[e].second];
                bool ok = false;
                for (int x : nd.boundary) {
                    for (const auto& c : inc[x])
                        if (cell_distance(c, cu) <= alpha && cell_distance(c, cv) <= alpha) {
                            ok = true;
                            break;
                        }
                    if (ok) break;
                }
                if (!ok) ++sc.containment_failures;
            }
    }
}

Pipeline build_pipeline(const UnitDiskGraph& g, const PipelineOptions& opt) {
    if (g.n() == 0) throw InputError("empty graph");
    Pipeline p;
    p.g = g;
    p.map = build_map(g, opt.salt);
    p.h = build_sparsifier(g, p.map);
    p.k = build_carrier(p.h, g, p.map);
    p.k.graph.c = h_weights(p.k.graph, p.map, p.h.alpha);
    p.k.graph.b = p.k.graph.c;
    p.k3 = contract_to_h3(p.k.graph);
    p.sd = build_surface_decomposition(p.k3.graph, opt.surface);
    p.sc = lift_to_h(p.sd, p.k, p.k3);
    perturb_to_sc(p.sc, p.sd, p.k, p.k3, g, p.map, p.h.alpha, opt.check_containment);
    return p;
}

double width_of(const SCDecomposition& sc, const GridMap& map, const UnitDiskGraph& g) {
    double w = 0;
    for (const auto& nd : sc.nodes) {
        std::set<CellId> cells;
        for (int e : nd.cut) {
            cells.insert(map.cell_of[g.edges[e].first]);
            cells.insert(map.cell_of[g.edges[e].second]);
        }
        double s = 0;
        for (const auto& c : cells) s += map.clique_weight(c);
        w = std::max(w, s);
    }
    return w;
}

SCAudit check_sc(const SCDecomposition& sc, const UnitDiskGraph& g, const GridMap& map, int c4_limit) {
    SCAudit a;
    std::ostringstream why;
    std::vector<int> seen(g.n(), 0);
    for (int leaf : sc.order)
        for (int v : sc.nodes[leaf].gverts) ++seen[v];
    for (int v = 0; v < g.n(); ++v)
        if (seen[v] != 1 || sc.nodes[sc.leaf_of_g[v]].left >= 0) {
            a.c1 = false;
            why << "vertex " << v << " placed " << seen[v] << " times; ";
            break;
        }
    for (int id = 0; id < static_cast<int>(sc.nodes.size()); ++id) {
        const auto& nd = sc.nodes[id];
        if (nd.left < 0) continue;
        const auto& L = sc.nodes[nd.left];
        const auto& R = sc.nodes[nd.right];
        std::vector<int> u;
        std::set_union(L.gverts.begin(), L.gverts.end(), R.gverts.begin(), R.gverts.end(), std::back_inserter(u));
        bool disjoint = u.size() == L.gverts.size() + R.gverts.size();
        bool tiles = L.tin == nd.tin && L.tout == R.tin && R.tout == nd.tout && L.parent == id && R.parent == id;
        if (!disjoint || u != nd.gverts || !tiles) {
            a.c2 = false;
            why << "node " << id << " not split by its children; ";
            break;
        }
    }
    std::map<CellId, std::set<int>> leaves_of_cell;
    for (int leaf : sc.order) {
        std::set<CellId> cs;
        for (int v : sc.nodes[leaf].gverts) {
            cs.insert(map.cell_of[v]);
            leaves_of_cell[map.cell_of[v]].insert(leaf);
        }
        if (cs.size() > 2) {
            a.c3 = false;
            why << "leaf " << leaf << " meets " << cs.size() << " cells; ";
        }
    }
    for (const auto& [c, ls] : leaves_of_cell) a.c4_spread = std::max(a.c4_spread, static_cast<int>(ls.size()));
    if (a.c4_spread > c4_limit) {
        a.c4 = false;
        why << "cell spread " << a.c4_spread << " over limit " << c4_limit << "; ";
    }
    if (sc.containment_failures > 0) {
        a.containment = false;
        why << sc.containment_failures << " cut edges far from the boundary; ";
    }
    a.detail = why.str();
    return a;
}

std::string sc_json(const SCDecomposition& sc) {
    nlohmann::json j;
    j["root"] = sc.root;
    j["width"] = sc.width;
    j["c4_spread"] = sc.c4_spread;
    j["max_depth"] = sc.max_depth;
    j["containment_failures"] = sc.containment_failures;
    auto& ns = j["nodes"] = nlohmann::json::array();
    for (const auto& nd : sc.nodes) {
        nlohmann::json x;
        x["kind"] = sc_kind_name(nd.kind);
        x["parent"] = nd.parent;
        x["children"] = nd.left >= 0 ? nlohmann::json::array({nd.left, nd.right}) : nlohmann::json::array();
        if (nd.atom >= 0) x["atom"] = nd.atom;
        if (nd.k_edge >= 0) x["k_edge"] = nd.k_edge;
        x["vertices"] = nd.gverts;
        x["cut"] = nd.cut;
        x["boundary"] = nd.boundary;
        x["weight"] = nd.weight;
        ns.push_back(std::move(x));
    }
    j["leaf_of_vertex"] = sc.leaf_of_g;
    return j.dump();
}

std::string sc_svg(const Pipeline& p) {
    const PlaneGraph& K = p.k.graph;
    long double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& q : K.pos) x0 = std::min(x0, q.x), y0 = std::min(y0, q.y), x1 = std::max(x1, q.x), y1 = std::max(y1, q.y);
    for (const auto& q : p.map.gpos) x0 = std::min(x0, q.x), y0 = std::min(y0, q.y), x1 = std::max(x1, q.x), y1 = std::max(y1, q.y);
    const double S = 40;
    auto X = [&](long double x) { return static_cast<double>((x - x0 + 1) * S); };
    auto Y = [&](long double y) { return static_cast<double>((y1 - y + 1) * S); };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << X(x1 + 1) << "\" height=\"" << Y(y0 - 1) << "\">\n";
    for (int e = 0; e < K.m(); ++e) {
        if (p.k.ekind[e] == EKind::Bridge) continue;
        auto [a, b] = K.edges[e];
        o << "<line x1=\"" << X(K.pos[a].x) << "\" y1=\"" << Y(K.pos[a].y) << "\" x2=\"" << X(K.pos[b].x) << "\" y2=\""
          << Y(K.pos[b].y) << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    }
    for (auto [u, v] : p.g.edges)
        o << "<line x1=\"" << X(p.map.gpos[u].x) << "\" y1=\"" << Y(p.map.gpos[u].y) << "\" x2=\"" << X(p.map.gpos[v].x)
          << "\" y2=\"" << Y(p.map.gpos[v].y) << "\" stroke=\"#48c\" stroke-width=\"0.5\"/>\n";
    for (int v = 0; v < p.g.n(); ++v) {
        unsigned h = static_cast<unsigned>(p.sc.leaf_of_g[v]) * 2654435761u;
        o << "<circle cx=\"" << X(p.map.gpos[v].x) << "\" cy=\"" << Y(p.map.gpos[v].y) << "\" r=\"3\" fill=\"hsl(" << h % 360
          << ",70%,45%)\"><title>v" << v << " leaf " << p.sc.leaf_of_g[v] << "</title></circle>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace udgcp
