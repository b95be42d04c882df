#include "udgcp/plane.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <set>

namespace udgcp {

int PlaneGraph::rot_next(int d) const {
    const auto& r = rot[tail(d)];
    int i = rpos[d] + 1;
    return r[i == static_cast<int>(r.size()) ? 0 : i];
}

int PlaneGraph::rot_prev(int d) const {
    const auto& r = rot[tail(d)];
    int i = rpos[d];
    return r[i == 0 ? r.size() - 1 : i - 1];
}

int PlaneGraph::add_vertex(GPoint p, double cw, double bw) {
    rot.emplace_back();
    if (pos.size() + 1 == rot.size()) pos.push_back(p);
    c.push_back(cw);
    b.push_back(bw);
    return n() - 1;
}

int PlaneGraph::add_edge(int u, int au, int v, int av) {
    require(u != v, "loop edge");
    int e = m();
    edges.emplace_back(u, v);
    auto insert = [&](int w, int after, int d) {
        auto& r = rot[w];
        if (after < 0) {
            require(r.empty(), "anchor dart required");
            r.push_back(d);
        } else {
            auto it = std::find(r.begin(), r.end(), after);
            require(it != r.end(), "anchor dart not at vertex");
            r.insert(it + 1, d);
        }
    };
    insert(u, au, 2 * e);
    insert(v, av, 2 * e + 1);
    return e;
}

void PlaneGraph::finalize() {
    if (c.size() < rot.size()) c.resize(rot.size(), 1.0);
    if (b.size() < rot.size()) b.resize(rot.size(), 0.0);
    rpos.assign(2 * m(), -1);
    for (int v = 0; v < n(); ++v)
        for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) {
            int d = rot[v][i];
            require(tail(d) == v, "rotation lists a dart at the wrong vertex");
            rpos[d] = i;
        }
    for (int d = 0; d < 2 * m(); ++d) require(rpos[d] >= 0, "dart missing from rotation");
    dface.assign(2 * m(), -1);
    faces.clear();
    for (int d = 0; d < 2 * m(); ++d) {
        if (dface[d] >= 0) continue;
        int f = static_cast<int>(faces.size());
        faces.emplace_back();
        int x = d;
        do {
            dface[x] = f;
            faces[f].push_back(x);
            x = next(x);
        } while (x != d);
    }
}

std::vector<int> PlaneGraph::neighbours(int v) const {
    std::vector<int> out;
    for (int d : rot[v]) out.push_back(head(d));
    return out;
}

int PlaneGraph::components() const {
    std::vector<int> comp(n(), -1);
    int k = 0;
    for (int s = 0; s < n(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> st{s};
        comp[s] = k;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int d : rot[v])
                if (comp[head(d)] < 0) {
                    comp[head(d)] = k;
                    st.push_back(head(d));
                }
        }
        ++k;
    }
    return k;
}

bool PlaneGraph::triangulated() const {
    if (n() < 3 || !is_connected() || static_cast<int>(rpos.size()) != 2 * m()) return false;
    for (const auto& f : faces)
        if (f.size() != 3) return false;
    return true;
}

bool PlaneGraph::euler_ok() const {
    std::vector<int> comp(n(), -1);
    int k = 0;
    for (int s = 0; s < n(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> st{s};
        comp[s] = k;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int d : rot[v])
                if (comp[head(d)] < 0) {
                    comp[head(d)] = k;
                    st.push_back(head(d));
                }
        }
        ++k;
    }
    std::vector<long long> V(k, 0), E(k, 0), F(k, 0);
    for (int v = 0; v < n(); ++v) ++V[comp[v]];
    for (auto [u, v] : edges) ++E[comp[u]];
    for (const auto& f : faces) ++F[comp[tail(f[0])]];
    for (int i = 0; i < k; ++i) {
        long long f = E[i] == 0 ? 1 : F[i];
        if (V[i] - E[i] + f != 2) return false;
    }
    return true;
}

PlaneGraph PlaneGraph::from_coords(std::vector<GPoint> pts, std::vector<std::pair<int, int>> es) {
    PlaneGraph g;
    g.rot.assign(pts.size(), {});
    g.pos = std::move(pts);
    g.edges = std::move(es);
    for (int e = 0; e < g.m(); ++e) {
        require(g.edges[e].first != g.edges[e].second, "loop edge");
        g.rot[g.edges[e].first].push_back(2 * e);
        g.rot[g.edges[e].second].push_back(2 * e + 1);
    }
    for (int v = 0; v < g.n(); ++v) {
        auto ang = [&](int d) {
            GPoint q = g.pos[g.head(d)] - g.pos[v];
            return std::atan2(q.y, q.x);
        };
        std::sort(g.rot[v].begin(), g.rot[v].end(), [&](int a, int b2) {
            long double x = ang(a), y = ang(b2);
            return x != y ? x < y : a < b2;
        });
    }
    g.finalize();
    return g;
}

PlaneGraph PlaneGraph::from_triangles(int n, const std::vector<std::array<int, 3>>& tris,
                                      const std::vector<std::array<int, 3>>& tri_edges, int m) {
    PlaneGraph g;
    g.rot.assign(n, {});
    g.edges.assign(m, {-1, -1});
    std::vector<int> used(2 * m, 0);
    std::vector<int> succ(2 * m, -1);  // rot_next
    auto dart = [&](int e, int from, int to) {
        auto& ed = g.edges[e];
        if (ed.first < 0) ed = {from, to};
        if (ed.first == from && ed.second == to) return 2 * e;
        require(ed.first == to && ed.second == from, "edge endpoints disagree between triangles");
        return 2 * e + 1;
    };
    std::vector<std::array<int, 3>> darts(tris.size());
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (int k = 0; k < 3; ++k) {
            int d = dart(tri_edges[i][k], tris[i][k], tris[i][(k + 1) % 3]);
            require(!used[d]++, "dart used by two triangles");
            darts[i][k] = d;
        }
    for (int d = 0; d < 2 * m; ++d) require(used[d] == 1, "edge not bounded by two triangles");
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (int k = 0; k < 3; ++k) {
            // corner at tris[i][k]: outgoing darts[i][k], incoming darts[i][k+2]
            int out = darts[i][k], in = darts[i][(k + 2) % 3];
            succ[out] = in ^ 1;
        }
    std::vector<char> placed(2 * m, 0);
    for (int d = 0; d < 2 * m; ++d) {
        if (placed[d]) continue;
        int v = g.tail(d);
        require(g.rot[v].empty(), "vertex link is not a single cycle");
        int x = d;
        do {
            placed[x] = 1;
            g.rot[v].push_back(x);
            x = succ[x];
        } while (x != d);
    }
    g.finalize();
    return g;
}

PlaneGraph PlaneGraph::from_triangles(int n, const std::vector<std::array<int, 3>>& tris) {
    std::map<std::pair<int, int>, int> id;
    std::vector<std::array<int, 3>> te(tris.size());
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (int k = 0; k < 3; ++k) {
            int a = tris[i][k], b = tris[i][(k + 1) % 3];
            auto key = std::minmax(a, b);
            auto it = id.find(key);
            if (it == id.end()) it = id.emplace(key, static_cast<int>(id.size())).first;
            te[i][k] = it->second;
        }
    return from_triangles(n, tris, te, static_cast<int>(id.size()));
}

AuxTriangulation triangulate_with_aux(const PlaneGraph& h, double aux_b) {
    require(h.m() > 0 && h.is_connected(), "triangulate_with_aux needs a connected graph with an edge");
    AuxTriangulation out;
    out.original_n = h.n();
    PlaneGraph t;
    t.edges = h.edges;
    t.rot = h.rot;
    t.c = h.c;
    t.b = h.b;
    t.c.resize(h.n(), 1.0);
    t.b.resize(h.n(), 0.0);
    // positions are not extended: aux vertices are virtual
    for (std::size_t f = 0; f < h.faces.size(); ++f) {
        int x = static_cast<int>(t.rot.size());
        t.rot.emplace_back();
        t.c.push_back(1.0);
        t.b.push_back(aux_b);
        out.aux_of_face.push_back(x);
        out.face_of_aux.push_back(static_cast<int>(f));
        int prev_spoke_dart = -1;
        for (int d : h.faces[f]) {
            int e = t.add_edge(x, prev_spoke_dart, h.tail(d), d);
            prev_spoke_dart = 2 * e;
            if (out.spoke_of_dart.empty()) out.spoke_of_dart.assign(2 * h.m(), -1);
            out.spoke_of_dart[d] = e;
        }
    }
    t.finalize();
    out.atom_of_dart.assign(2 * h.m(), -1);
    out.atom_dart.assign(t.faces.size(), -1);
    for (int d = 0; d < 2 * h.m(); ++d) {
        int f = t.dface[d];
        require(t.faces[f].size() == 3, "aux triangulation produced a non-triangle");
        out.atom_of_dart[d] = f;
        out.atom_dart[f] = d;
    }
    for (int f = 0; f < static_cast<int>(t.faces.size()); ++f)
        require(out.atom_dart[f] >= 0, "face without an original dart");
    out.tri = std::move(t);
    return out;
}

std::vector<char> face_mask(const PlaneGraph& h, const std::vector<int>& faces) {
    std::vector<char> in(h.faces.size(), 0);
    for (int f : faces) in[f] = 1;
    return in;
}

int piece_rank(const PlaneGraph& h, const std::vector<char>& in) {
    int F = static_cast<int>(h.faces.size());
    std::vector<int> seen(F, 0);
    int k = 0;
    for (int s = 0; s < F; ++s) {
        if (in[s] || seen[s]) continue;
        ++k;
        std::vector<int> st{s};
        seen[s] = 1;
        while (!st.empty()) {
            int f = st.back();
            st.pop_back();
            for (int d : h.faces[f]) {
                int g = h.dface[PlaneGraph::twin(d)];
                if (!in[g] && !seen[g]) {
                    seen[g] = 1;
                    st.push_back(g);
                }
            }
        }
    }
    return k;
}

bool piece_connected(const PlaneGraph& h, const std::vector<int>& faces) {
    if (faces.empty()) return false;
    auto in = face_mask(h, faces);
    std::vector<char> seen(h.faces.size(), 0);
    std::vector<int> st{faces[0]};
    seen[faces[0]] = 1;
    std::size_t cnt = 1;
    while (!st.empty()) {
        int f = st.back();
        st.pop_back();
        for (int d : h.faces[f]) {
            int g = h.dface[PlaneGraph::twin(d)];
            if (in[g] && !seen[g]) {
                seen[g] = 1;
                ++cnt;
                st.push_back(g);
            }
        }
    }
    return cnt == faces.size();
}

std::vector<int> piece_boundary(const PlaneGraph& h, const std::vector<char>& in) {
    std::vector<char> ins(h.n(), 0), outs(h.n(), 0);
    for (int f = 0; f < static_cast<int>(h.faces.size()); ++f)
        for (int d : h.faces[f]) (in[f] ? ins : outs)[h.tail(d)] = 1;
    std::vector<int> out;
    for (int v = 0; v < h.n(); ++v)
        if (ins[v] && outs[v]) out.push_back(v);
    return out;
}

Piece make_piece(const PlaneGraph& h, std::vector<int> faces) {
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    Piece p;
    p.rank = piece_rank(h, face_mask(h, faces));
    p.faces = std::move(faces);
    return p;
}

std::vector<Piece> cut_piece(const PlaneGraph& h, const Piece& a, const Noose& noose, bool with_rank) {
    require(noose.vertices.size() == noose.faces.size(), "noose shape");
    auto in = face_mask(h, a.faces);
    std::set<std::pair<int, int>> blocked;  // (face, dart of that face) not crossed
    std::size_t k = noose.vertices.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (!noose.open_after.empty() && noose.open_after[i]) continue;
        int f = noose.faces[i], u = noose.vertices[i], v = noose.vertices[(i + 1) % k];
        if (f < 0 || f >= static_cast<int>(h.faces.size()) || !in[f]) throw InputError("noose leaves the piece");
        int found = -1;
        for (int d : h.faces[f])
            if ((h.tail(d) == u && h.head(d) == v) || (h.tail(d) == v && h.head(d) == u)) found = d;
        if (found < 0) throw InputError("noose face does not join its vertices");
        blocked.insert({f, found});
        blocked.insert({h.dface[PlaneGraph::twin(found)], PlaneGraph::twin(found)});
    }
    std::vector<int> comp(h.faces.size(), -1);
    std::vector<Piece> out;
    for (int s : a.faces) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        std::vector<int> fs{s}, st{s};
        comp[s] = id;
        while (!st.empty()) {
            int f = st.back();
            st.pop_back();
            for (int d : h.faces[f]) {
                if (blocked.count({f, d})) continue;
                int g = h.dface[PlaneGraph::twin(d)];
                if (in[g] && comp[g] < 0) {
                    comp[g] = id;
                    fs.push_back(g);
                    st.push_back(g);
                }
            }
        }
        if (with_rank) {
            out.push_back(make_piece(h, fs));
        } else {
            std::sort(fs.begin(), fs.end());
            out.push_back(Piece{std::move(fs), 0});
        }
    }
    return out;
}

}  // namespace udgcp
