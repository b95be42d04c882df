#include "udgcp/surface_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include "json.hpp"
#include <unordered_map>

namespace udgcp {

const char* split_rule_name(SplitRule r) {
    switch (r) {
        case SplitRule::Leaf: return "leaf";
        case SplitRule::VertexSeparator: return "vertex-separator";
        case SplitRule::HoleSeparator: return "hole-separator";
        case SplitRule::Binarize: return "binarize";
        case SplitRule::BasePeel: return "base-peel";
        case SplitRule::FallbackPeel: return "fallback-peel";
    }
    return "?";
}

namespace {

std::vector<char> mask_of(const PlaneGraph& t, const std::vector<int>& atoms) {
    std::vector<char> in(t.faces.size(), 0);
    for (int f : atoms) in[f] = 1;
    return in;
}

// DFS postorder over the atom adjacency of a piece, rooted at an atom of the
// lowest-id host vertex. Removing any prefix leaves the rest edge-connected.
std::vector<int> peel_order(const AuxTriangulation& at, const std::vector<int>& atoms, const std::vector<char>& in) {
    const PlaneGraph& t = at.tri;
    int best_v = -1, root = -1;
    for (int f : atoms)
        for (int d : t.faces[f]) {
            int v = t.tail(d);
            if (v >= at.original_n) continue;
            if (best_v < 0 || v < best_v || (v == best_v && f < root)) best_v = v, root = f;
        }
    if (root < 0) root = atoms.front();
    std::unordered_map<int, int> seen;
    std::vector<int> post;
    std::vector<std::pair<int, int>> st{{root, 0}};
    seen[root] = 1;
    while (!st.empty()) {
        auto& [f, i] = st.back();
        if (i < 3) {
            int d = t.faces[f][i++];
            int g = t.dface[PlaneGraph::twin(d)];
            if (in[g] && !seen.count(g)) {
                seen[g] = 1;
                st.push_back({g, 0});
            }
        } else {
            post.push_back(f);
            st.pop_back();
        }
    }
    require(post.size() == atoms.size(), "piece is not edge-connected");
    return post;
}

struct Work {
    int node;
    bool parent_hole;
    std::vector<int> order;  // base-mode peel order, empty otherwise
};

}  // namespace

int piece_host_vertices(const SurfaceDecomposition& sd, const std::vector<int>& atoms) {
    if (sd.single_vertex) return 1;
    std::vector<int> vs;
    for (int f : atoms)
        for (int d : sd.at.tri.faces[f])
            if (sd.at.tri.tail(d) < sd.at.original_n) vs.push_back(sd.at.tri.tail(d));
    std::sort(vs.begin(), vs.end());
    return static_cast<int>(std::unique(vs.begin(), vs.end()) - vs.begin());
}

int piece_host_edges(const SurfaceDecomposition& sd, const std::vector<int>& atoms) {
    int k = 0;
    for (int f : atoms) k += (sd.at.atom_dart[f] % 2 == 0);
    return k;
}

LocalSphere local_sphere(const AuxTriangulation& at, const std::vector<int>& atoms, bool hole_weights) {
    const PlaneGraph& t = at.tri;
    auto in = mask_of(t, atoms);
    LocalSphere ls;
    std::unordered_map<int, int> copy_of;  // dart with face in piece -> local vertex of its tail corner
    std::vector<double> c, b;
    std::vector<int> verts;
    for (int f : atoms)
        for (int d : t.faces[f]) verts.push_back(t.tail(d));
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (int v : verts) {
        const auto& r = t.rot[v];
        int k = static_cast<int>(r.size());
        auto inside = [&](int i) { return in[t.dface[r[((i % k) + k) % k]]] != 0; };
        bool weighted = false;
        auto new_copy = [&]() {
            int id = static_cast<int>(ls.host_vertex.size());
            ls.host_vertex.push_back(v);
            c.push_back(t.c[v]);
            bool real = v < at.original_n;
            b.push_back(!hole_weights && real && !weighted ? t.c[v] : 0.0);
            weighted = true;
            return id;
        };
        int start = -1;
        for (int i = 0; i < k; ++i)
            if (inside(i) && !inside(i - 1)) {
                start = i;
                break;
            }
        if (start < 0) {  // whole star inside
            int id = new_copy();
            for (int i = 0; i < k; ++i) copy_of[r[i]] = id;
            continue;
        }
        for (int s = 0; s < k; ++s) {
            int i = (start + s) % k;
            if (!inside(i) || inside(i - 1)) continue;
            int id = new_copy();
            for (int j = i; inside(j) && j < i + k; ++j) copy_of[r[j % k]] = id;
        }
    }

    std::unordered_map<int, int> edge_id;  // interior host edge -> local edge
    std::unordered_map<int, int> side_id;  // boundary dart -> local edge
    std::map<std::pair<int, int>, int> spoke_id;
    auto new_edge = [&](int host_dart) {
        ls.host_dart.push_back(host_dart);
        return static_cast<int>(ls.host_dart.size()) - 1;
    };
    std::vector<std::array<int, 3>> tris, tedges;
    std::vector<int> bdarts;
    for (int f : atoms) {
        std::array<int, 3> tv{}, te{};
        for (int k = 0; k < 3; ++k) {
            int d = t.faces[f][k];
            tv[k] = copy_of.at(d);
            if (in[t.dface[PlaneGraph::twin(d)]]) {
                int e = PlaneGraph::edge_of(d);
                auto it = edge_id.find(e);
                te[k] = it != edge_id.end() ? it->second : (edge_id[e] = new_edge(d));
            } else {
                te[k] = side_id[d] = new_edge(d);
                bdarts.push_back(d);
            }
        }
        tris.push_back(tv);
        tedges.push_back(te);
    }
    // boundary circles: successor keeps the hole on the right
    std::unordered_map<int, int> succ, circle;
    for (int d : bdarts) {
        int x = t.rot_prev(PlaneGraph::twin(d));
        while (in[t.dface[t.rot_prev(x)]]) x = t.rot_prev(x);
        succ[d] = x;
    }
    for (int d : bdarts) {
        if (circle.count(d)) continue;
        int cone = static_cast<int>(ls.host_vertex.size());
        ls.host_vertex.push_back(-1);
        c.push_back(1.0);
        b.push_back(hole_weights ? 1.0 : 0.0);
        ++ls.cones;
        int x = d;
        do {
            circle[x] = cone;
            x = succ.at(x);
        } while (x != d);
    }
    auto spoke = [&](int cone, int v) {
        auto key = std::make_pair(cone, v);
        auto it = spoke_id.find(key);
        return it != spoke_id.end() ? it->second : (spoke_id[key] = new_edge(-1));
    };
    for (int d : bdarts) {
        int cone = circle.at(d);
        int u = copy_of.at(d), w = copy_of.at(t.next(d));
        tris.push_back({w, u, cone});
        tedges.push_back({side_id.at(d), spoke(cone, u), spoke(cone, w)});
    }
    ls.g = PlaneGraph::from_triangles(static_cast<int>(ls.host_vertex.size()), tris, tedges,
                                      static_cast<int>(ls.host_dart.size()));
    ls.g.c = std::move(c);
    ls.g.b = std::move(b);
    return ls;
}

namespace {

SeparatorCall separate(const AuxTriangulation& at, const std::vector<int>& atoms, bool hole) {
    const PlaneGraph& t = at.tri;
    auto in = mask_of(t, atoms);
    LocalSphere ls = local_sphere(at, atoms, hole);
    SeparatorCall out;
    out.cycle = balanced_small_separator(ls.g);
    const auto& cyc = out.cycle;
    std::size_t k = cyc.cycle.size();
    for (std::size_t i = 0; i < k; ++i) {
        int le = cyc.cycle_edges[i];
        int hd = ls.host_dart[le];
        out.noose.vertices.push_back(ls.host_vertex[cyc.cycle[i]]);
        if (hd < 0) {
            out.noose.faces.push_back(-1);
            out.noose.open_after.push_back(1);
        } else {
            int f = in[t.dface[hd]] ? t.dface[hd] : t.dface[PlaneGraph::twin(hd)];
            out.noose.faces.push_back(f);
            out.noose.open_after.push_back(0);
        }
    }
    out.parts = cut_piece(t, Piece{atoms, 0}, out.noose, false);
    return out;
}

}  // namespace

SeparatorCall vertex_separator(const AuxTriangulation& at, const std::vector<int>& atoms) {
    return separate(at, atoms, false);
}

SeparatorCall hole_separator(const AuxTriangulation& at, const std::vector<int>& atoms) {
    return separate(at, atoms, true);
}

SurfaceDecomposition build_surface_decomposition(const PlaneGraph& host, const SurfaceOptions& opt) {
    SurfaceDecomposition sd;
    if (host.m() == 0) {
        require(host.n() == 1, "surface decomposition: host must be connected");
        sd.single_vertex = true;
        SDNode leaf;
        leaf.stop = "single-vertex";
        sd.nodes.push_back(leaf);
        return sd;
    }
    require(host.is_connected(), "surface decomposition: host must be connected");
    sd.at = triangulate_with_aux(host);
    const PlaneGraph& t = sd.at.tri;
    int on = sd.at.original_n;

    auto add_node = [&](std::vector<int> atoms, int parent) {
        std::sort(atoms.begin(), atoms.end());
        SDNode nd;
        nd.atoms = std::move(atoms);
        nd.parent = parent;
        nd.depth = parent >= 0 ? sd.nodes[parent].depth + 1 : 0;
        auto in = mask_of(t, nd.atoms);
        std::vector<int> vs;
        for (int f : nd.atoms)
            for (int d : t.faces[f])
                if (t.tail(d) < on) vs.push_back(t.tail(d));
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        for (int v : vs) {
            bool out = false;
            for (int d : t.rot[v])
                if (!in[t.dface[d]]) {
                    out = true;
                    break;
                }
            if (out) {
                nd.boundary.push_back(v);
                nd.weight += t.c[v];
            }
        }
        if (opt.record_ranks) nd.rank = piece_rank(t, in);
        sd.nodes.push_back(std::move(nd));
        return static_cast<int>(sd.nodes.size()) - 1;
    };

    std::vector<int> all(t.faces.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    sd.root = add_node(all, -1);
    std::vector<Work> stack{{sd.root, false, {}}};

    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();
        int id = w.node;
        std::vector<int> atoms = sd.nodes[id].atoms;
        int nv = piece_host_vertices(sd, atoms);
        if (nv <= 2 && piece_host_edges(sd, atoms) <= 1) {
            sd.nodes[id].rule = SplitRule::Leaf;
            sd.nodes[id].stop = atoms.size() == 1 ? "single-atom" : "two-vertices";
            continue;
        }
        auto in = mask_of(t, atoms);
        auto peel = [&](std::vector<int> order, SplitRule rule, bool keep_order) {
            int first = order.front();
            std::vector<int> rest;
            for (int f : atoms)
                if (f != first) rest.push_back(f);
            sd.nodes[id].rule = rule;
            int l = add_node({first}, id);
            int r = add_node(rest, id);
            sd.nodes[id].left = l;
            sd.nodes[id].right = r;
            stack.push_back({l, false, {}});
            order.erase(order.begin());
            stack.push_back({r, false, keep_order ? std::move(order) : std::vector<int>{}});
        };
        if (!w.order.empty() || nv < opt.base_threshold) {
            auto order = w.order.empty() ? peel_order(sd.at, atoms, in) : w.order;
            peel(std::move(order), SplitRule::BasePeel, true);
            continue;
        }
        int rank = sd.nodes[id].rank >= 0 ? sd.nodes[id].rank : piece_rank(t, in);
        sd.nodes[id].rank = rank;
        bool hole = rank > opt.rank_threshold && !w.parent_hole;
        SeparatorCall call = hole ? hole_separator(sd.at, atoms) : vertex_separator(sd.at, atoms);
        ++sd.separator_calls;
        if (hole) ++sd.hole_calls;
        if (call.cycle.kind == "sequence") ++sd.sequence_cycles;
        if (call.parts.size() < 2) {
            ++sd.fallback_peels;
            peel(peel_order(sd.at, atoms, in), SplitRule::FallbackPeel, false);
            continue;
        }
        sd.nodes[id].rule = hole ? SplitRule::HoleSeparator : SplitRule::VertexSeparator;

        // binarize: peel parts in DFS postorder of the part adjacency graph
        int P = static_cast<int>(call.parts.size());
        std::unordered_map<int, int> part_of;
        for (int p = 0; p < P; ++p)
            for (int f : call.parts[p].faces) part_of[f] = p;
        std::vector<std::vector<int>> adj(P);
        for (int p = 0; p < P; ++p)
            for (int f : call.parts[p].faces)
                for (int d : t.faces[f]) {
                    int g = t.dface[PlaneGraph::twin(d)];
                    auto it = part_of.find(g);
                    if (it != part_of.end() && it->second != p) adj[p].push_back(it->second);
                }
        for (auto& a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        std::vector<int> post;
        std::vector<char> seen(P, 0);
        std::vector<std::pair<int, std::size_t>> st{{0, 0}};
        seen[0] = 1;
        while (!st.empty()) {
            auto& [p, i] = st.back();
            if (i < adj[p].size()) {
                int q = adj[p][i++];
                if (!seen[q]) {
                    seen[q] = 1;
                    st.push_back({q, 0});
                }
            } else {
                post.push_back(p);
                st.pop_back();
            }
        }
        require(static_cast<int>(post.size()) == P, "separator parts are not adjacent");
        std::vector<char> gone(P, 0);
        int cur = id;
        for (int i = 0; i + 1 < P; ++i) {
            gone[post[i]] = 1;
            int l = add_node(call.parts[post[i]].faces, cur);
            stack.push_back({l, hole, {}});
            int r;
            if (i + 2 == P) {
                r = add_node(call.parts[post[i + 1]].faces, cur);
                stack.push_back({r, hole, {}});
            } else {
                std::vector<int> rest;
                for (int q = 0; q < P; ++q)
                    if (!gone[q]) rest.insert(rest.end(), call.parts[q].faces.begin(), call.parts[q].faces.end());
                r = add_node(rest, cur);
                sd.nodes[r].rule = SplitRule::Binarize;
            }
            sd.nodes[cur].left = l;
            sd.nodes[cur].right = r;
            cur = r;
        }
    }
    for (const auto& nd : sd.nodes) {
        sd.width = std::max(sd.width, nd.weight);
        sd.max_depth = std::max(sd.max_depth, nd.depth);
    }
    return sd;
}

SurfaceAudit check_surface(const SurfaceDecomposition& sd) {
    SurfaceAudit a;
    auto fail = [&](bool& flag, const std::string& msg) {
        if (flag) a.detail += msg + "; ";
        flag = false;
    };
    if (sd.single_vertex) return a;
    const PlaneGraph& t = sd.at.tri;
    int on = sd.at.original_n;
    for (std::size_t i = 0; i < sd.nodes.size(); ++i) {
        const SDNode& nd = sd.nodes[i];
        bool leaf = nd.left < 0 && nd.right < 0;
        if (!leaf && (nd.left < 0 || nd.right < 0)) fail(a.binary, "node " + std::to_string(i) + " has one child");
        if (leaf) {
            if (piece_host_vertices(sd, nd.atoms) > 2) fail(a.a3, "leaf " + std::to_string(i) + " holds > 2 vertices");
        } else if (nd.left >= 0 && nd.right >= 0) {
            std::vector<int> u;
            const auto& L = sd.nodes[nd.left].atoms;
            const auto& R = sd.nodes[nd.right].atoms;
            std::merge(L.begin(), L.end(), R.begin(), R.end(), std::back_inserter(u));
            if (u != nd.atoms) fail(a.a2, "node " + std::to_string(i) + " is not split exactly");
            if (sd.nodes[nd.left].parent != static_cast<int>(i) || sd.nodes[nd.right].parent != static_cast<int>(i))
                fail(a.binary, "parent links");
        }
        // boundary edges are spokes or original edges pushed into the non-owner side;
        // either way the boundary meets the host only at listed vertices
        auto in = mask_of(t, nd.atoms);
        std::vector<int> expect;
        for (int f : nd.atoms)
            for (int d : t.faces[f]) {
                if (in[t.dface[PlaneGraph::twin(d)]]) continue;
                for (int v : {t.tail(d), t.head(d)})
                    if (v < on) expect.push_back(v);
            }
        std::sort(expect.begin(), expect.end());
        expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
        if (expect != nd.boundary) fail(a.a1, "node " + std::to_string(i) + " boundary vertices differ");
    }
    // no two hole separators in a row on a root-leaf path
    std::vector<std::pair<int, bool>> st{{sd.root, false}};
    while (!st.empty()) {
        auto [v, prev_hole] = st.back();
        st.pop_back();
        const SDNode& nd = sd.nodes[v];
        bool h = prev_hole;
        if (nd.rule == SplitRule::HoleSeparator) {
            if (prev_hole) fail(a.holes_alternate, "consecutive hole separators at " + std::to_string(v));
            h = true;
        } else if (nd.rule == SplitRule::VertexSeparator || nd.rule == SplitRule::BasePeel ||
                   nd.rule == SplitRule::FallbackPeel) {
            h = false;
        }
        if (nd.left >= 0) st.push_back({nd.left, h});
        if (nd.right >= 0) st.push_back({nd.right, h});
    }
    return a;
}

std::string surface_json(const SurfaceDecomposition& sd) {
    nlohmann::json j;
    j["width"] = sd.width;
    j["max_depth"] = sd.max_depth;
    j["separator_calls"] = sd.separator_calls;
    j["hole_calls"] = sd.hole_calls;
    j["fallback_peels"] = sd.fallback_peels;
    j["root"] = sd.root;
    auto& arr = j["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < sd.nodes.size(); ++i) {
        const auto& nd = sd.nodes[i];
        nlohmann::json x;
        x["id"] = i;
        x["parent"] = nd.parent;
        x["children"] = {nd.left, nd.right};
        x["rule"] = split_rule_name(nd.rule);
        if (!nd.stop.empty()) x["stop"] = nd.stop;
        x["atoms"] = nd.atoms.size();
        x["boundary"] = nd.boundary;
        x["weight"] = nd.weight;
        if (nd.rank >= 0) x["rank"] = nd.rank;
        arr.push_back(x);
    }
    return j.dump();
}

}  // namespace udgcp
