#include "udgcp/parity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <stdexcept>

namespace udgcp {

namespace {

// Winding number of closed polygon c around p.
int winding(const Polyline& c, GPoint p) {
    int w = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        GPoint a = c[i], b = c[(i + 1) % c.size()];
        if (a.y <= p.y) {
            if (b.y > p.y && orient(a, b, p) > 0) ++w;
        } else if (b.y <= p.y && orient(a, b, p) < 0) {
            --w;
        }
    }
    return w;
}

int winding_sum(const ParityFrame& f, GPoint p) {
    int w = 0;
    for (const auto& c : f.curves) w += winding(c, p);
    return w;
}

bool segments_meet(GPoint a, GPoint b, GPoint c, GPoint d) {
    auto sgn = [](long double x) { return (x > 0) - (x < 0); };
    int o1 = sgn(orient(a, b, c)), o2 = sgn(orient(a, b, d)), o3 = sgn(orient(c, d, a)), o4 = sgn(orient(c, d, b));
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    auto on = [](GPoint p, GPoint q, GPoint r) {  // r on segment pq, given collinear
        return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
               r.y <= std::max(p.y, q.y);
    };
    return (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) ||
           (o4 == 0 && on(c, d, b));
}

// Candidate anchor points on a curve: vertices and edge midpoints.
std::vector<GPoint> anchors(const Polyline& c) {
    std::vector<GPoint> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.push_back(c[i]);
        out.push_back(0.5L * (c[i] + c[(i + 1) % c.size()]));
    }
    return out;
}

}  // namespace

bool in_region(const ParityFrame& f, GPoint p) {
    // reference: a point just left of the first edge of curve 0
    const Polyline& c = f.curves.at(0);
    GPoint a = c[0], b = c[1 % c.size()], d = b - a;
    long double len = std::sqrt(dot(d, d));
    GPoint ref = 0.5L * (a + b) + (1e-7L / len) * GPoint{-d.y, d.x};
    return winding_sum(f, p) == winding_sum(f, ref);
}

long double curve_length(const Polyline& c) {
    long double s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += std::sqrt(dist2(c[i], c[(i + 1) % c.size()]));
    return s;
}

long double curve_param(const Polyline& c, GPoint p) {
    long double s = 0, best = -1, bd = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        GPoint a = c[i], b = c[(i + 1) % c.size()];
        long double l = std::sqrt(dist2(a, b));
        long double d = point_segment_distance(p, a, b);
        if (best < 0 || d < bd) {
            bd = d;
            best = s + std::sqrt(dist2(a, p));
        }
        s += l;
    }
    return best;
}

long double frame_position(const ParityFrame& f, int c, int other, GPoint p) {
    bool first = c < other;
    const Polyline& lam = f.lambda.at(first ? std::make_pair(c, other) : std::make_pair(other, c));
    GPoint o = first ? lam.front() : lam.back();
    const Polyline& cv = f.curves[c];
    long double len = curve_length(cv);
    long double x = curve_param(cv, p) - curve_param(cv, o);
    if (x < 0) x += len;
    return x;
}

ParityFrame make_frame(std::vector<Polyline> curves, const std::vector<GPoint>& avoid, long double eps) {
    ParityFrame f;
    f.curves = std::move(curves);
    int nc = static_cast<int>(f.curves.size());
    auto valid = [&](const Polyline& lam) {
        // shrink both ends by eps; the rest must miss every curve
        Polyline in = lam;
        GPoint d0 = in[1] - in[0], d1 = in[in.size() - 2] - in.back();
        in.front() = in.front() + (eps / std::sqrt(dot(d0, d0))) * d0;
        in.back() = in.back() + (eps / std::sqrt(dot(d1, d1))) * d1;
        for (std::size_t i = 0; i + 1 < in.size(); ++i) {
            if (dist2(in[i], in[i + 1]) == 0) return false;
            for (const auto& c : f.curves)
                for (std::size_t j = 0; j < c.size(); ++j)
                    if (segments_meet(in[i], in[i + 1], c[j], c[(j + 1) % c.size()])) return false;
            for (GPoint q : avoid)
                if (point_segment_distance(q, lam[i], lam[i + 1]) <= eps) return false;
        }
        return in_region(f, 0.5L * (in[0] + in[1]));
    };
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
            auto A = anchors(f.curves[i]), B = anchors(f.curves[j]);
            struct Cand {
                long double d;
                std::size_t a, b;
                int shape;  // 0 straight, 1 and 2 the two L shapes
            };
            std::vector<Cand> cand;
            for (std::size_t a = 0; a < A.size(); ++a)
                for (std::size_t b = 0; b < B.size(); ++b) {
                    long double d = dist2(A[a], B[b]);
                    for (int sh = 0; sh < 3; ++sh) cand.push_back({sh ? 2 * d : d, a, b, sh});
                }
            // lazily in order of (length, index)
            auto later = [](const Cand& x, const Cand& y) {
                return std::tie(x.d, x.a, x.b, x.shape) > std::tie(y.d, y.a, y.b, y.shape);
            };
            std::make_heap(cand.begin(), cand.end(), later);
            bool done = false;
            while (!done && !cand.empty()) {
                std::pop_heap(cand.begin(), cand.end(), later);
                Cand c = cand.back();
                cand.pop_back();
                GPoint a = A[c.a], b = B[c.b];
                Polyline lam = c.shape == 0 ? Polyline{a, b}
                               : c.shape == 1 ? Polyline{a, GPoint{a.x, b.y}, b}
                                              : Polyline{a, GPoint{b.x, a.y}, b};
                if (valid(lam)) {
                    f.lambda[{i, j}] = lam;
                    done = true;
                }
            }
            if (!done) throw InvariantError("no connector between boundary curves");
        }
    return f;
}

int crossing_count(const Polyline& path, const Polyline& lam) {
    int n = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        for (std::size_t j = 0; j + 1 < lam.size(); ++j)
            if (segment_params(path[i], path[i + 1], lam[j], lam[j + 1], 0.0L)) ++n;
    return n;
}

bool crossing_parity(const Polyline& path, const ParityFrame& f, int c, int c2) {
    const Polyline& lam = f.lambda.at({std::min(c, c2), std::max(c, c2)});
    return crossing_count(path, lam) & 1;
}

std::vector<AnchoredPath> anchored_paths(const SCDecomposition& sc, const UnitDiskGraph& g, const GridMap& map,
                                         int t, const std::vector<int>& solution_edges) {
    const auto& vt = sc.nodes[t].gverts;
    auto inside = [&](int v) { return std::binary_search(vt.begin(), vt.end(), v); };
    std::map<int, std::vector<int>> inner, out;  // vertex -> neighbours / leaving edges
    for (int e : solution_edges) {
        auto [u, v] = g.edges[e];
        bool iu = inside(u), iv = inside(v);
        if (iu && iv) {
            inner[u].push_back(v);
            inner[v].push_back(u);
        } else if (iu) {
            out[u].push_back(e);
        } else if (iv) {
            out[v].push_back(e);
        }
    }
    auto exit_of = [&](int e, int from) {
        const EdgeTrace& tr = sc.traces[e];
        Crossing c;
        if (g.edges[e].first == from) {
            std::size_t i = 0;
            while (i + 1 < tr.leaves.size() && sc.in_subtree(tr.leaves[i + 1], t)) ++i;
            require(i + 1 < tr.leaves.size(), "cut edge trace stays in the piece");
            c = tr.between[i];
        } else {
            std::size_t j = tr.leaves.size() - 1;
            while (j > 0 && sc.in_subtree(tr.leaves[j - 1], t)) --j;
            require(j > 0, "cut edge trace stays in the piece");
            c = tr.between[j - 1];
        }
        auto [u, v] = g.edges[e];
        GPoint a = map.gpos[u], b = map.gpos[v];
        return std::make_pair(c, a + static_cast<long double>(c.t) * (b - a));
    };
    std::vector<AnchoredPath> res;
    std::set<int> seen;
    std::vector<int> starts;
    for (const auto& [v, _] : inner) starts.push_back(v);
    for (const auto& [v, _] : out) starts.push_back(v);
    std::sort(starts.begin(), starts.end());
    for (int s : starts) {
        if (seen.count(s)) continue;
        auto deg = [&](int v) { return inner.count(v) ? static_cast<int>(inner[v].size()) : 0; };
        // component, walked from an end when there is one
        std::vector<int> comp{s};
        seen.insert(s);
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int w : inner[comp[i]])
                if (seen.insert(w).second) comp.push_back(w);
        int end = -1;
        for (int v : comp)
            if (deg(v) < 2 && (end < 0 || v < end)) end = v;
        if (end < 0) continue;  // cycle
        AnchoredPath p;
        p.vertices.push_back(end);
        for (int prev = -1, cur = end;;) {
            int nxt = -1;
            for (int w : inner[cur])
                if (w != prev) nxt = w;
            if (nxt < 0) break;
            p.vertices.push_back(nxt);
            prev = cur;
            cur = nxt;
        }
        int a = p.vertices.front(), b = p.vertices.back();
        std::vector<int> oa = out[a], ob = out[b];
        if (a == b) {
            if (oa.size() < 2) continue;
            ob = {oa[1]};
        }
        if (oa.empty() || ob.empty()) continue;
        p.cut_edge = {oa[0], ob[0]};
        auto [ca, pa] = exit_of(oa[0], a);
        auto [cb, pb] = exit_of(ob[0], b);
        p.exit = {ca, cb};
        p.point = {pa, pb};
        res.push_back(p);
    }
    return res;
}

}  // namespace udgcp
