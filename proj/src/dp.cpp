#include "udgcp/dp.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <iostream>
#include <limits>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "udgcp/cac.hpp"

namespace udgcp {

const char* mode_name(Mode m) { return m == Mode::Standard ? "standard" : "refined"; }

std::vector<int> Signature::key() const {
    std::vector<int> k;
    k.reserve(1 + 3 * pending.size() + 2 * residue.size());
    k.push_back(static_cast<int>(pending.size()));
    for (std::size_t i = 0; i < pending.size(); ++i) {
        k.push_back(pending[i]);
        k.push_back(ends[i]);
        k.push_back(mate[i]);
        k.push_back(flag(i));
    }
    for (auto [c, r] : residue) {
        k.push_back(c);
        k.push_back(r);
    }
    return k;
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

CellIndex CellIndex::build(const GridMap& map, const UnitDiskGraph& g) {
    CellIndex ci;
    std::map<CellId, int> id;
    std::vector<std::vector<int>> members;
    ci.cell.resize(g.n());
    for (int v = 0; v < g.n(); ++v) {
        auto [it, fresh] = id.try_emplace(map.cell_of[v], static_cast<int>(members.size()));
        if (fresh) members.emplace_back();
        ci.cell[v] = it->second;
        members[it->second].push_back(v);
    }
    for (const auto& ms : members) {
        ci.size.push_back(static_cast<int>(ms.size()));
        bool clique = ms.size() >= 3;
        for (std::size_t i = 0; clique && i < ms.size(); ++i)
            for (std::size_t j = i + 1; clique && j < ms.size(); ++j) clique = g.adjacent(ms[i], ms[j]);
        ci.clique.push_back(clique);
    }
    return ci;
}

MergeContext::MergeContext(const UnitDiskGraph& g, const CellIndex& cells, const std::vector<int>& ua,
                           const std::vector<int>& ub, long long cap)
    : g_(g), cells_(cells), outdeg_(g.n(), 0), cell_in_(cells.size.size(), 0), in_u_(g.n(), 0), in_b_(g.n(), 0), cap_(cap), mark_(g.n(), 0), pos_(g.n(), 0) {
    std::merge(ua.begin(), ua.end(), ub.begin(), ub.end(), std::back_inserter(u_));
    for (int v : u_) in_u_[v] = 1, ++cell_in_[cells.cell[v]];
    for (int v : ub) in_b_[v] = 1;
    outdeg_nc_.assign(g.n(), 0);
    for (int v : u_)
        for (int w : g.adj[v]) {
            outdeg_[v] += !in_u_[w];
            outdeg_nc_[v] += !in_u_[w] && !(cells.clique[cells.cell[v]] && cells.cell[w] == cells.cell[v]);
            if (!in_u_[w] && !mark_[w]) mark_[w] = 1, ++rim_;
        }
    std::fill(mark_.begin(), mark_.end(), 0);
}

void MergeContext::combine(const Signature& a, const Signature& b,
                           const std::function<void(Signature&&, int, const std::vector<int>&)>& out,
                           int need) const {
    // per-call scratch, kept to avoid reallocating for every pair
    thread_local std::vector<std::pair<int, int>> res;
    thread_local std::vector<int> verts, tok, mate, left, after_u, after_w, rem, t2, m2, x;
    thread_local std::vector<char> fl, f2;
    res.clear(), verts.clear(), tok.clear(), mate.clear(), fl.clear(), x.clear();
    // residues do not depend on the chosen edges
    int tri = 0;
    {
        std::size_t i = 0, j = 0;
        while (i < a.residue.size() || j < b.residue.size()) {
            int c, s;
            if (j == b.residue.size() || (i < a.residue.size() && a.residue[i].first < b.residue[j].first)) {
                c = a.residue[i].first, s = a.residue[i++].second;
            } else if (i == a.residue.size() || b.residue[j].first < a.residue[i].first) {
                c = b.residue[j].first, s = b.residue[j++].second;
            } else {
                c = a.residue[i].first, s = a.residue[i++].second + b.residue[j++].second;
            }
            tri += s / 3;
            if (s % 3 && cell_in_[c] < cells_.size[c]) res.push_back({c, s % 3});
        }
    }
    // joint pending list
    {
        std::size_t i = 0, j = 0;
        while (i < a.pending.size() || j < b.pending.size()) {
            bool fromA = j == b.pending.size() || (i < a.pending.size() && a.pending[i] < b.pending[j]);
            const Signature& s = fromA ? a : b;
            std::size_t& k = fromA ? i : j;
            verts.push_back(s.pending[k]);
            tok.push_back(s.ends[k]);
            mate.push_back(s.mate[k]);
            fl.push_back(s.flag(k));
            ++k;
        }
    }
    for (std::size_t i = 0; i < verts.size(); ++i) pos_[verts[i]] = static_cast<int>(i);
    auto idx = [&](int v) { return pos_[v]; };
    struct Cand {
        int e, iu, iw;
    };
    thread_local std::vector<Cand> cand;
    cand.clear();
    for (int u : a.pending)
        for (int w : g_.adj[u])
            if (in_b_[w] && pos_[w] < static_cast<int>(verts.size()) && verts[pos_[w]] == w)
                cand.push_back({g_.edge_id(u, w), idx(u), idx(w)});

    // candidates are decided one by one; after each decision a vertex must
    // still be able to spend its open ends on later candidates or outside
    left.assign(verts.size(), 0);
    after_u.resize(cand.size());
    after_w.resize(cand.size());
    for (std::size_t i = cand.size(); i-- > 0;) {
        after_u[i] = left[cand[i].iu]++;
        after_w[i] = left[cand[i].iw]++;
    }
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (tok[i] > outdeg_[verts[i]] + left[i]) return;
    rem = left;
    // ends that must go outside, against two per outside neighbour of the union
    int must = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) must += std::max(0, tok[i] - rem[i]);
    t2 = tok, m2 = mate, f2 = fl;
    auto clique_of = [&](int v) { return cells_.clique[cells_.cell[v]] ? cells_.cell[v] : -1; };
    int cycles = 0;
    auto settled = [&](std::size_t i) {
        const Cand& c = cand[i];
        return t2[c.iu] <= outdeg_[verts[c.iu]] + after_u[i] && t2[c.iw] <= outdeg_[verts[c.iw]] + after_w[i];
    };
    auto emit = [&]() {
        Signature s;
        std::map<int, int> per_cell;
        int total = 0;
        ++stamp_;
        int room = 0;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (!t2[i]) continue;
            int v = verts[i];
            if (t2[i] == 1 && (f2[i] & Signature::kLonger) && g_.adjacent(v, m2[i])) return;  // closing edge passed
            // at most one more vertex of v's clique cell
            if (clique_of(v) >= 0 && (t2[i] == 2 || (f2[i] & Signature::kPaired)) && !outdeg_nc_[v]) return;
            if (++per_cell[cells_.cell[v]] > cap_) return;
            total += t2[i];
            for (int w : g_.adj[v])
                if (!in_u_[w] && mark_[w] != stamp_) mark_[w] = stamp_, ++room;
            s.pending.push_back(v);
            s.ends.push_back(t2[i]);
            s.mate.push_back(t2[i] == 2 ? v : m2[i]);
            s.flags.push_back(t2[i] == 1 ? f2[i] : 0);
        }
        if (total > 2 * room) return;  // each outside vertex takes two ends at most
        if (std::none_of(s.flags.begin(), s.flags.end(), [](char c) { return c; })) s.flags.clear();
        s.residue = res;
        out(std::move(s), cycles + tri, x);
    };
    struct Saved {
        int i, t, m;
        char l;
    };
    auto owed = [&](int j) { return std::max(0, t2[j] - rem[j]); };
    // Doubled vertex count behind the open structure: 1 per singleton, 2 per
    // two-vertex path, 3 per longer one; each cycle counts 3.
    auto worth = [&](int j) { return t2[j] == 0 ? 0 : t2[j] == 2 ? 2 : (f2[j] & Signature::kLonger) ? 3 : 2; };
    int fixed = 0, outside = g_.n() - static_cast<int>(u_.size()), open2 = 0;
    for (auto [c, r] : res) fixed += r;
    fixed += 3 * tri;
    for (std::size_t j = 0; j < verts.size(); ++j) open2 += worth(static_cast<int>(j));
    auto hopeless = [&](std::size_t i) {
        if (need == std::numeric_limits<int>::min()) return false;
        if (2 * (fixed + 3 * cycles + outside) + open2 < 6 * need) return true;
        // a cycle closing here takes a later cross edge; later ones an outside vertex
        return tri + cycles + static_cast<int>(cand.size() - i) + outside < need;
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (must > 2 * rim_ || hopeless(i)) return;
        if (i == cand.size()) {
            emit();
            return;
        }
        const Cand& c = cand[i];
        int before = owed(c.iu) + owed(c.iw);
        --rem[c.iu], --rem[c.iw];
        int base = must - before;
        must = base + owed(c.iu) + owed(c.iw);
        if (settled(i)) self(self, i + 1);
        int u = verts[c.iu], w = verts[c.iw];
        int ou = t2[c.iu] == 2 ? u : m2[c.iu], ow = t2[c.iw] == 2 ? w : m2[c.iw];
        // an end turning interior must not see the far end of the other path
        bool take = t2[c.iu] && t2[c.iw] &&
                    !(ou != w && ou != u && w != ow && (g_.adjacent(u, ow) || g_.adjacent(ou, w)));
        // inside one clique cell neither end may already have its neighbour there
        bool same = clique_of(u) >= 0 && clique_of(u) == clique_of(w);
        if (same && ((t2[c.iu] == 1 && (f2[c.iu] & Signature::kPaired)) ||
                     (t2[c.iw] == 1 && (f2[c.iw] & Signature::kPaired))))
            take = false;
        if (take) {
            int io = idx(ou), iow = idx(ow);
            Saved sv[4];
            int k = 0, nd = 0, dist[4];
            for (int j : {c.iu, c.iw, io, iow}) {
                sv[k++] = {j, t2[j], m2[j], f2[j]};
                if (std::find(dist, dist + nd, j) == dist + nd) dist[nd++] = j;
            }
            int open_before = open2;
            for (int q = 0; q < nd; ++q) open2 -= worth(dist[q]);
            if (ou == w) {
                ++cycles;
                t2[c.iu] = t2[c.iw] = 0;
            } else {
                --t2[c.iu];
                --t2[c.iw];
                m2[io] = ow;
                m2[iow] = ou;
                char lg = ou == u && ow == w ? 0 : Signature::kLonger;
                f2[io] = lg | (ou == u ? (same ? Signature::kPaired : 0) : (f2[io] & Signature::kPaired));
                f2[iow] = lg | (ow == w ? (same ? Signature::kPaired : 0) : (f2[iow] & Signature::kPaired));
            }
            for (int q = 0; q < nd; ++q) open2 += worth(dist[q]);
            must = base + owed(c.iu) + owed(c.iw);
            x.push_back(c.e);
            if (settled(i)) self(self, i + 1);
            x.pop_back();
            if (ou == w) --cycles;
            for (k = 3; k >= 0; --k) t2[sv[k].i] = sv[k].t, m2[sv[k].i] = sv[k].m, f2[sv[k].i] = sv[k].l;
            open2 = open_before;
        }
        ++rem[c.iu], ++rem[c.iw];
        must = base + before;
    };
    rec(rec, 0);
}

std::vector<Signature> singleton_signatures(const UnitDiskGraph& g, const CellIndex& cells, int v) {
    std::vector<Signature> out(1);
    if (cells.clique[cells.cell[v]]) {
        Signature s;
        s.residue = {{cells.cell[v], 1}};
        out.push_back(s);
    }
    if (g.degree(v) >= 2) {
        Signature s;
        s.pending = {v};
        s.ends = {2};
        s.mate = {v};
        out.push_back(s);
    }
    return out;
}

bool refined_pairs_ok(const std::vector<BoundaryPair>& pairs, int z) {
    std::map<int, std::vector<std::pair<double, int>>> same;  // circle -> (pos, end label)
    std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> across;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        if (p.circle_a == p.circle_b) {
            same[p.circle_a].push_back({p.pos_a, 2 * static_cast<int>(i)});
            same[p.circle_a].push_back({p.pos_b, 2 * static_cast<int>(i) + 1});
        } else if (p.circle_a < p.circle_b) {
            across[{p.circle_a, p.circle_b}].push_back({p.pos_a, p.pos_b});
        } else {
            across[{p.circle_b, p.circle_a}].push_back({p.pos_b, p.pos_a});
        }
    }
    for (auto& [c, ends] : same) {
        if (static_cast<int>(ends.size()) < 4 * z) continue;
        std::sort(ends.begin(), ends.end());
        std::vector<int> label(ends.size());
        for (std::size_t r = 0; r < ends.size(); ++r) label[ends[r].second] = static_cast<int>(r);
        std::vector<std::pair<int, int>> ps;
        for (std::size_t i = 0; i < ends.size(); i += 2) ps.push_back({label[i], label[i + 1]});
        if (!pairs_kzz_free(ps, z)) return false;
    }
    for (auto& [cc, ps] : across) {
        int m = static_cast<int>(ps.size());
        if (m < 2 * z) continue;
        if (m > 20) continue;  // colourings not enumerated; accepted
        bool found = false;
        for (long mask = 0; !found && mask < (1L << (m - 1)); ++mask) {
            bool ok = true;
            for (int cls = 0; ok && cls < 2; ++cls) {
                std::vector<int> mem;
                for (int i = 0; i < m; ++i)
                    if (((mask >> i) & 1) == cls) mem.push_back(i);
                if (static_cast<int>(mem.size()) < 2 * z) continue;
                CACGraph h;
                h.n = static_cast<int>(mem.size());
                h.adj.assign(h.n, {});
                for (int i = 0; i < h.n; ++i)
                    for (int j = i + 1; j < h.n; ++j) {
                        auto [x1, y1] = ps[mem[i]];
                        auto [x2, y2] = ps[mem[j]];
                        if ((x1 < x2) == (y1 < y2)) {
                            h.adj[i].push_back(j);
                            h.adj[j].push_back(i);
                            h.edges.push_back({i, j});
                        }
                    }
                ok = is_kzz_free(h, z);
            }
            found = ok;
        }
        if (!found) return false;
    }
    return true;
}

namespace {

struct Entry {
    Signature sig;
    int value = 0;
    int a = -1, b = -1;   // child entries
    std::vector<int> x;   // edges chosen at this merge
    int option = -1;      // singleton: 0 unused, 1 reserved, 2 pending
};

struct Step {
    int left = -1, right = -1;
    int vertex = -1;  // singleton step
    std::vector<int> u;
    std::vector<Entry> entries;
};

// Boundary circles of a Surface node's piece over the aux triangulation.
struct PieceBoundary {
    std::vector<char> in;          // per aux face
    std::vector<int> circle, index;  // per aux dart (-1 off the boundary)
};

class Solver {
public:
    Solver(const Pipeline& p, const DPOptions& opt) : p_(p), g_(p.g), opt_(opt) {
        cells_ = CellIndex::build(p.map, p.g);
        cap_ = opt.cap >= 0 ? opt.cap : packedness_constant(compute_constants(p.map, p.g));
        // Twins: same cell and same closed neighbourhood. Swapping two of them is
        // an automorphism that keeps cells, so states differing by such swaps
        // have the same completions. Exits differ geometrically, so refined
        // mode keeps every state.
        twin_.assign(g_.n(), -1);
        if (opt.symmetry && opt.mode == Mode::Standard) {
            std::map<std::pair<int, std::vector<int>>, std::vector<int>> cls;
            for (int v = 0; v < g_.n(); ++v) {
                std::vector<int> nb = g_.adj[v];
                nb.push_back(v);
                std::sort(nb.begin(), nb.end());
                cls[{cells_.cell[v], nb}].push_back(v);
            }
            int id = 0;
            for (const auto& [_, vs] : cls) {
                if (vs.size() < 2) continue;
                for (int v : vs) twin_[v] = id;
                ++id;
            }
        }
    }

    DPRun run() {
        auto t0 = std::chrono::steady_clock::now();
        DPRun out;
        out.stats.cap = cap_;
        const auto& sc = p_.sc;
        Step empty;
        empty.entries.push_back({});
        steps_.push_back(std::move(empty));
        std::vector<int> handle(sc.nodes.size(), -1);
        if (opt_.keep_tables) out.tables.assign(sc.nodes.size(), {});
        // post-order
        std::vector<std::pair<int, bool>> st{{sc.root, false}};
        while (!st.empty()) {
            auto [t, done] = st.back();
            st.pop_back();
            const SCNode& nd = sc.nodes[t];
            if (!done && nd.left >= 0) {
                st.push_back({t, true});
                st.push_back({nd.right, false});
                st.push_back({nd.left, false});
                continue;
            }
            int h = -1;
            if (nd.left < 0) {
                for (int v : nd.gverts) {
                    int s = singleton(v);
                    h = merge(h < 0 ? 0 : h, s, -1);
                }
            } else {
                int l = handle[nd.left], r = handle[nd.right];
                h = l < 0 ? r : r < 0 ? l : merge(l, r, t);
            }
            handle[t] = h;
            if (opt_.keep_tables) {
                if (h < 0) {
                    out.tables[t] = {Signature{}};
                } else {
                    for (const auto& e : steps_[h].entries) out.tables[t].push_back(e.sig);
                }
            }
        }
        int root = handle[sc.root];
        out.stats.steps = static_cast<int>(steps_.size());
        out.stats.total_states = total_;
        out.stats.max_states = max_;
        out.stats.pruned = pruned_;
        out.stats.unknown_exits = unknown_;
        out.stats.bounded = bounded_;
        if (root >= 0) {
            int best = -1;
            for (std::size_t i = 0; i < steps_[root].entries.size(); ++i)
                if (steps_[root].entries[i].sig.empty()) best = static_cast<int>(i);
            if (best < 0) {
                require(opt_.lower_bound > 0, "root table lacks the empty signature");
                out.value = -1;
            } else {
                out.value = steps_[root].entries[best].value;
                traceback(root, best, out);
            }
        }
        out.stats.seconds = seconds_since(t0);
        return out;
    }

private:
    int singleton(int v) {
        Step s;
        s.vertex = v;
        s.u = {v};
        auto sigs = singleton_signatures(g_, cells_, v);
        for (auto& sig : sigs) {
            Entry e;
            e.option = sig.pending.empty() ? (sig.residue.empty() ? 0 : 1) : 2;
            e.sig = std::move(sig);
            s.entries.push_back(std::move(e));
        }
        steps_.push_back(std::move(s));
        return static_cast<int>(steps_.size()) - 1;
    }

    int merge(int l, int r, int node) {
        MergeContext ctx(g_, cells_, steps_[l].u, steps_[r].u, cap_);
        Step s;
        s.left = l;
        s.right = r;
        s.u = ctx.vertices();
        std::unordered_map<std::vector<int>, int, KeyHash> at;
        bool refine = opt_.mode == Mode::Refined && node >= 0;
        const auto& le = steps_[l].entries;
        const auto& re = steps_[r].entries;
        // Every cycle not yet counted uses three vertices outside U or behind
        // the open structure, and at least one outside vertex unless it closes
        // at this merge.
        int lb = opt_.lower_bound;
        int outside = g_.n() - static_cast<int>(s.u.size());
        auto potential = [](const Entry& e) { return 3 * e.value + units(e.sig); };
        std::vector<int> order(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return potential(re[x]) > potential(re[y]); });
        // Cross edges take one end on each side: there must be enough of them
        // for the ends that cannot leave the union.
        struct Ends {
            int open = 0, stuck = 0;
        };
        auto ends_of = [&](const Entry& e) {
            Ends r;
            for (std::size_t i = 0; i < e.sig.pending.size(); ++i) {
                r.open += e.sig.ends[i];
                r.stuck += std::max(0, e.sig.ends[i] - ctx.outside_degree(e.sig.pending[i]));
            }
            return r;
        };
        std::vector<Ends> ea(le.size()), eb(re.size());
        for (std::size_t i = 0; i < le.size(); ++i) ea[i] = ends_of(le[i]);
        for (std::size_t i = 0; i < re.size(); ++i) eb[i] = ends_of(re[i]);
        for (std::size_t ia = 0; ia < le.size(); ++ia)
            for (int ib : order) {
                if (lb > 0 && potential(le[ia]) + potential(re[ib]) + outside < 3 * lb) {
                    bounded_ += 1;
                    break;
                }
                if (std::max(ea[ia].stuck, eb[ib].stuck) > std::min(ea[ia].open, eb[ib].open)) continue;
                int need = lb > 0 ? lb - le[ia].value - re[ib].value : std::numeric_limits<int>::min();
                ctx.combine(le[ia].sig, re[ib].sig, [&](Signature&& sig, int gain, const std::vector<int>& x) {
                    if (refine && !refined_ok(node, le[ia].sig, re[ib].sig, x)) {
                        ++pruned_;
                        return;
                    }
                    int value = le[ia].value + re[ib].value + gain;
                    if (lb > 0 && value + std::min(outside, (outside + units(sig)) / 3) < lb) {
                        ++bounded_;
                        return;
                    }
                    auto key = orbit_key(sig);
                    auto it = at.find(key);
                    if (it != at.end()) {
                        Entry& e = s.entries[it->second];
                        if (value > e.value) {
                            e.sig = std::move(sig);
                            e.value = value;
                            e.a = static_cast<int>(ia);
                            e.b = static_cast<int>(ib);
                            e.x = x;
                        }
                        return;
                    }
                    at.emplace(std::move(key), static_cast<int>(s.entries.size()));
                    Entry e;
                    e.sig = std::move(sig);
                    e.value = value;
                    e.a = static_cast<int>(ia);
                    e.b = static_cast<int>(ib);
                    e.x = x;
                    s.entries.push_back(std::move(e));
                    if (++total_ > opt_.state_budget) throw std::runtime_error("DP state budget exceeded");
                }, need);
            }
        max_ = std::max(max_, s.entries.size());
        steps_.push_back(std::move(s));
        return static_cast<int>(steps_.size()) - 1;
    }

    void traceback(int root, int entry, DPRun& out) {
        std::vector<int> xs, reserved;
        std::vector<std::pair<int, int>> st{{root, entry}};
        while (!st.empty()) {
            auto [s, e] = st.back();
            st.pop_back();
            const Step& step = steps_[s];
            const Entry& en = step.entries[e];
            if (step.vertex >= 0) {
                if (en.option == 1) reserved.push_back(step.vertex);
                continue;
            }
            if (step.left < 0) continue;
            xs.insert(xs.end(), en.x.begin(), en.x.end());
            st.push_back({step.left, en.a});
            st.push_back({step.right, en.b});
        }
        // cycles from the chosen edges
        AdjList sol(g_.n());
        for (int e : xs) {
            auto [u, v] = g_.edges[e];
            sol[u].push_back(v);
            sol[v].push_back(u);
        }
        std::vector<char> used(g_.n(), 0);
        for (int v = 0; v < g_.n(); ++v) {
            require(sol[v].empty() || sol[v].size() == 2, "traceback: solution vertex of degree other than 2");
            if (sol[v].empty() || used[v]) continue;
            Cycle c{v};
            used[v] = 1;
            for (int prev = v, cur = sol[v][0]; cur != v;) {
                c.push_back(cur);
                used[cur] = 1;
                int nxt = sol[cur][0] == prev ? sol[cur][1] : sol[cur][0];
                prev = cur;
                cur = nxt;
            }
            out.cycles.push_back(c);
        }
        // reserved vertices form triangles inside their cells
        std::map<int, std::vector<int>> by_cell;
        for (int v : reserved) {
            require(!used[v], "reserved vertex also on a cycle");
            by_cell[cells_.cell[v]].push_back(v);
        }
        for (auto& [c, vs] : by_cell) {
            std::sort(vs.begin(), vs.end());
            for (std::size_t i = 0; i + 3 <= vs.size(); i += 3) {
                out.cycles.push_back({vs[i], vs[i + 1], vs[i + 2]});
                used[vs[i]] = used[vs[i + 1]] = used[vs[i + 2]] = 1;
            }
        }
        require(static_cast<int>(out.cycles.size()) == out.value, "traceback does not reproduce the table value");
        // completion with the cells' leftover vertices
        std::map<int, std::vector<int>> left;
        for (int v = 0; v < g_.n(); ++v)
            if (!used[v] && cells_.clique[cells_.cell[v]]) left[cells_.cell[v]].push_back(v);
        for (auto& [c, vs] : left)
            for (std::size_t i = 0; i + 3 <= vs.size(); i += 3) {
                out.cycles.push_back({vs[i], vs[i + 1], vs[i + 2]});
                ++out.stats.completion_added;
            }
        out.value = static_cast<int>(out.cycles.size());
        require(verify_solution(g_.adj, out.cycles), "traceback produced an invalid packing");
    }

    // refined filter

    const PieceBoundary& boundary(int node) {
        auto it = boundaries_.find(node);
        if (it != boundaries_.end()) return it->second;
        PieceBoundary pb;
        const PlaneGraph& T = p_.sd.at.tri;
        const SCNode& nd = p_.sc.nodes[node];
        const auto& atoms = nd.sd_node >= 0 ? p_.sd.nodes[nd.sd_node].atoms : nd.atoms;
        pb.in.assign(T.faces.size(), 0);
        for (int a : atoms) pb.in[a] = 1;
        pb.circle.assign(2 * T.m(), -1);
        pb.index.assign(2 * T.m(), -1);
        auto on_boundary = [&](int d) { return pb.in[T.dface[d]] && !pb.in[T.dface[d ^ 1]]; };
        int circles = 0;
        for (int d = 0; d < 2 * T.m(); ++d) {
            if (!on_boundary(d) || pb.circle[d] >= 0) continue;
            int i = 0;
            for (int x = d; pb.circle[x] < 0;) {
                pb.circle[x] = circles;
                pb.index[x] = i++;
                int y = T.rot_prev(x ^ 1);
                while (pb.in[T.dface[y ^ 1]]) y = T.rot_prev(y);
                x = y;
            }
            ++circles;
        }
        return boundaries_.emplace(node, std::move(pb)).first->second;
    }

    // circle and position where edge e, followed from v, leaves the piece of `node`
    std::optional<std::pair<int, double>> exit_coord(int e, int v, int node) {
        const auto& sc = p_.sc;
        const EdgeTrace& tr = sc.traces[e];
        bool fwd = g_.edges[e].first == v;
        int nl = static_cast<int>(tr.leaves.size());
        int inside = -1;
        Crossing c;
        for (int k = 0; k + 1 < nl; ++k) {
            int a = fwd ? k : nl - 1 - k, b = fwd ? k + 1 : nl - 2 - k;
            if (!sc.in_subtree(tr.leaves[b], node)) {
                inside = tr.leaves[a];
                c = tr.between[fwd ? k : nl - 2 - k];
                break;
            }
        }
        if (inside < 0) return std::nullopt;
        const PieceBoundary& pb = boundary(node);
        const PlaneGraph& T = p_.sd.at.tri;
        if (c.tedge >= 0) {
            for (int d : {2 * c.tedge, 2 * c.tedge + 1})
                if (pb.circle[d] >= 0) return std::make_pair(pb.circle[d], pb.index[d] + ((d & 1) ? 1 - c.pos : c.pos));
            return std::nullopt;
        }
        if (c.tvertex >= 0) {
            int atom = sc.nodes[inside].atom;
            if (atom < 0) return std::nullopt;
            int y = -1;
            for (int d : T.faces[atom])
                if (T.tail(d) == c.tvertex) y = d;
            if (y < 0) return std::nullopt;
            for (int guard = 0; guard <= T.degree(c.tvertex); ++guard) {
                if (!pb.in[T.dface[T.rot_prev(y)]]) break;
                y = T.rot_prev(y);
            }
            if (pb.circle[y] < 0) return std::nullopt;
            return std::make_pair(pb.circle[y], static_cast<double>(pb.index[y]));
        }
        return std::nullopt;
    }

    bool refined_ok(int node, const Signature& a, const Signature& b, const std::vector<int>& x) {
        const auto& sc = p_.sc;
        std::map<int, std::vector<int>> at;  // vertex -> chosen edges
        for (int e : x) {
            at[g_.edges[e].first].push_back(e);
            at[g_.edges[e].second].push_back(e);
        }
        for (int side = 0; side < 2; ++side) {
            int child = side == 0 ? sc.nodes[node].left : sc.nodes[node].right;
            if (sc.nodes[child].kind != SCKind::Surface) continue;
            const Signature& s = side == 0 ? a : b;
            std::vector<BoundaryPair> pairs;
            for (std::size_t i = 0; i < s.pending.size(); ++i) {
                int v = s.pending[i], w = s.mate[i];
                int e1 = -1, e2 = -1;
                auto iv = at.find(v);
                if (iv == at.end()) continue;
                if (s.ends[i] == 2) {
                    if (iv->second.size() < 2) continue;
                    e1 = iv->second[0], e2 = iv->second[1];
                } else {
                    if (w < v) continue;
                    auto iw = at.find(w);
                    if (iw == at.end()) continue;
                    e1 = iv->second[0], e2 = iw->second[0];
                }
                auto p1 = exit_coord(e1, v, child), p2 = exit_coord(e2, w, child);
                if (!p1 || !p2) {
                    ++unknown_;
                    continue;
                }
                pairs.push_back({p1->first, p2->first, p1->second, p2->second});
            }
            if (!refined_pairs_ok(pairs, opt_.z)) return false;
        }
        return true;
    }

    const Pipeline& p_;
    const UnitDiskGraph& g_;
    DPOptions opt_;
    CellIndex cells_;
    long long cap_ = 0;
    std::vector<Step> steps_;
    std::size_t total_ = 0, max_ = 0;
    long long pruned_ = 0, unknown_ = 0, bounded_ = 0;

    std::vector<int> twin_;  // twin class, -1 when alone

    // Twin members lose their identity: only the class shows in the key.
    std::vector<int> orbit_key(const Signature& s) const {
        auto lab = [&](int v) { return twin_[v] < 0 ? v : -1 - twin_[v]; };
        bool any = false;
        for (int v : s.pending) any |= twin_[v] >= 0;
        if (!any) return s.key();
        std::vector<std::array<int, 4>> t;
        for (std::size_t i = 0; i < s.pending.size(); ++i)
            t.push_back({lab(s.pending[i]), s.ends[i], lab(s.mate[i]), s.flag(i)});
        std::sort(t.begin(), t.end());
        std::vector<int> k{static_cast<int>(t.size())};
        for (const auto& q : t) k.insert(k.end(), q.begin(), q.end());
        for (auto [c, r] : s.residue) k.push_back(c), k.push_back(r);
        return k;
    }

    // Lower bound on the vertices behind a signature's open structure.
    static int units(const Signature& s) {
        int u = 0;
        for (std::size_t i = 0; i < s.ends.size(); ++i) u += s.ends[i] == 2 ? 2 : s.is_longer(i) ? 3 : 2;
        u /= 2;
        for (auto [c, r] : s.residue) u += r;
        return u;
    }
    std::map<int, PieceBoundary> boundaries_;
};

}  // namespace

DPRun run_dp(const Pipeline& p, const DPOptions& opt) { return Solver(p, opt).run(); }

std::vector<Signature> enumerate_valid_tuples(const Pipeline& p, int node, Mode mode, int z) {
    DPOptions opt;
    opt.mode = mode;
    opt.z = z;
    opt.keep_tables = true;
    opt.symmetry = false;
    return run_dp(p, opt).tables.at(node);
}

SolveResult solve(const UnitDiskGraph& g, int k, const SolveOptions& opt) {
    SolveResult r;
    r.stats.n = g.n();
    r.stats.m = g.m();
    Cleaned c = clean(g);
    r.stats.cleaned_n = c.g.n();
    r.stats.cleaned_m = c.g.m();
    auto back = [&](std::vector<Cycle> cs) {
        for (auto& cy : cs)
            for (int& v : cy) v = c.original[v];
        return cs;
    };
    if (c.g.n() == 0) {
        r.value = 0;
        r.feasible = k <= 0;
        return r;
    }
    if (opt.dense_shortcut && k > 0) {
        if (auto d = dense_extract(c.g, k, opt.dense)) {
            r.stats.dense = true;
            r.feasible = true;
            r.cycles = back(d->cycles);
            require(verify_solution(g.adj, r.cycles), "dense extraction produced an invalid packing");
            return r;
        }
    }
    auto t0 = std::chrono::steady_clock::now();
    Pipeline p = build_pipeline(c.g, opt.pipeline);
    r.stats.pipeline_seconds = seconds_since(t0);
    r.stats.width = p.sc.width;
    DPOptions dopt;
    dopt.mode = opt.mode;
    dopt.z = opt.z;
    dopt.cap = opt.cap;
    dopt.state_budget = opt.state_budget;
    dopt.lower_bound = static_cast<int>(greedy_packing(p.g.adj).size());
    DPRun run = run_dp(p, dopt);
    if (opt.mode == Mode::Refined && run.stats.pruned > 0) {
        dopt.mode = Mode::Standard;
        DPRun std_run = run_dp(p, dopt);
        if (std_run.value != run.value) {
            r.stats.z_too_small = true;
            std::clog << "z-too-small: refined mode with z=" << opt.z << " found "
                      << (run.value < 0 ? std::string("fewer than ") + std::to_string(dopt.lower_bound)
                                        : std::to_string(run.value))
                      << " cycles, standard mode " << std_run.value << "; using standard\n";
            run = std::move(std_run);
        }
    }
    require(run.value >= 0, "standard run fell below the greedy lower bound");
    r.stats.dp = run.stats;
    r.stats.dp_seconds = run.stats.seconds;
    r.value = run.value;
    r.feasible = run.value >= k;
    r.cycles = back(run.cycles);
    if (r.feasible) r.cycles.resize(std::max(k, 0));
    require(verify_solution(g.adj, r.cycles), "solver produced an invalid packing");
    return r;
}

std::string certificate_json(const SolveResult& r, int k) {
    nlohmann::json j;
    j["k"] = k;
    j["feasible"] = r.feasible;
    if (r.value >= 0) j["max_cycles"] = r.value;
    j["cycles"] = r.cycles;
    return j.dump(2);
}

std::string stats_json(const SolveResult& r) {
    const auto& s = r.stats;
    nlohmann::json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["cleaned_n"] = s.cleaned_n;
    j["cleaned_m"] = s.cleaned_m;
    j["dense_shortcut"] = s.dense;
    j["z_too_small"] = s.z_too_small;
    j["width"] = s.width;
    j["pipeline_seconds"] = s.pipeline_seconds;
    j["dp_seconds"] = s.dp_seconds;
    j["dp"] = {{"steps", s.dp.steps},
               {"total_states", s.dp.total_states},
               {"max_states", s.dp.max_states},
               {"pruned", s.dp.pruned},
               {"unknown_exits", s.dp.unknown_exits},
               {"completion_added", s.dp.completion_added},
               {"cap", s.dp.cap}};
    return j.dump(2);
}

}  // namespace udgcp
