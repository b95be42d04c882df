#include "udgcp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

namespace udgcp {

namespace {

using Mask = std::uint32_t;

struct Search {
    int n;
    std::vector<Mask> nb;
    bool induced_only;
    std::vector<int> memo;  // -1 unknown
    std::vector<std::vector<std::pair<Mask, Cycle>>> cycles_at;  // by pivot, cycles whose min vertex is pivot

    Search(const AdjList& adj, bool induced) : n(static_cast<int>(adj.size())), nb(n, 0), induced_only(induced) {
        for (int v = 0; v < n; ++v)
            for (int w : adj[v]) nb[v] |= Mask(1) << w;
        memo.assign(std::size_t(1) << n, -1);
        cycles_at.resize(n);
        for (int v = 0; v < n; ++v) enumerate_from(v);
    }

    // Cycles with minimum vertex v; each listed once (second vertex < last vertex).
    void enumerate_from(int v) {
        Mask allowed = 0;
        for (int w = v + 1; w < n; ++w) allowed |= Mask(1) << w;
        std::vector<int> path{v};
        std::function<void(Mask)> dfs = [&](Mask used) {
            int last = path.back();
            Mask cand = nb[last] & allowed & ~used;
            for (int w = 0; w < n; ++w) {
                if (!(cand >> w & 1)) continue;
                if (induced_only && path.size() >= 2) {
                    // w may touch only `last` among interior vertices, and v only if it closes
                    Mask interior = 0;
                    for (std::size_t i = 1; i + 1 < path.size(); ++i) interior |= Mask(1) << path[i];
                    if (nb[w] & interior) continue;
                }
                path.push_back(w);
                Mask used2 = used | (Mask(1) << w);
                if (path.size() >= 3 && (nb[w] >> v & 1) && path[1] < w) {
                    Mask m = 0;
                    for (int x : path) m |= Mask(1) << x;
                    cycles_at[v].push_back({m, path});
                }
                bool can_extend = true;
                if (induced_only && path.size() >= 3 && (nb[w] >> v & 1)) can_extend = false;  // chord to v
                if (can_extend) dfs(used2);
                path.pop_back();
            }
        };
        dfs(Mask(1) << v);
    }

    int solve(Mask m) {
        if (m == 0) return 0;
        int& r = memo[m];
        if (r >= 0) return r;
        int v = __builtin_ctz(m);
        int best = solve(m & ~(Mask(1) << v));
        for (const auto& [cm, cyc] : cycles_at[v])
            if ((cm & m) == cm) best = std::max(best, 1 + solve(m & ~cm));
        r = best;
        return r;
    }

    void recover(Mask m, std::vector<Cycle>& out) {
        while (m) {
            int v = __builtin_ctz(m);
            int cur = solve(m);
            Mask rest = m & ~(Mask(1) << v);
            if (solve(rest) == cur) {
                m = rest;
                continue;
            }
            bool found = false;
            for (const auto& [cm, cyc] : cycles_at[v])
                if ((cm & m) == cm && 1 + solve(m & ~cm) == cur) {
                    out.push_back(cyc);
                    m &= ~cm;
                    found = true;
                    break;
                }
            require(found, "oracle recovery failed");
        }
    }

    void all(Mask m, std::vector<Cycle>& cur, std::set<std::vector<Cycle>>& out, std::size_t cap) {
        if (out.size() >= cap) return;
        if (solve(m) == 0) {
            auto s = cur;
            std::sort(s.begin(), s.end());
            out.insert(s);
            return;
        }
        int v = __builtin_ctz(m);
        int target = solve(m);
        Mask rest = m & ~(Mask(1) << v);
        if (solve(rest) == target) all(rest, cur, out, cap);
        for (const auto& [cm, cyc] : cycles_at[v])
            if ((cm & m) == cm && 1 + solve(m & ~cm) == target) {
                cur.push_back(cyc);
                all(m & ~cm, cur, out, cap);
                cur.pop_back();
            }
    }
};

void check_limit(const AdjList& adj, const OracleOptions& opt) {
    if (static_cast<int>(adj.size()) > opt.limit_n || adj.size() > 24)
        throw InputError("oracle refuses n=" + std::to_string(adj.size()) + " (limit " +
                         std::to_string(opt.limit_n) + ")");
}

}  // namespace

Cycle canonical_cycle(Cycle c) {
    if (c.empty()) return c;
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
    return c;
}

OracleResult max_cycle_packing(const AdjList& adj, const OracleOptions& opt) {
    check_limit(adj, opt);
    OracleResult res;
    if (adj.empty()) return res;
    Search s(adj, opt.induced_only);
    Mask all = static_cast<Mask>((std::uint64_t(1) << adj.size()) - 1);
    res.value = s.solve(all);
    s.recover(all, res.cycles);
    for (auto& c : res.cycles) c = canonical_cycle(c);
    return res;
}

std::vector<std::vector<Cycle>> all_optimal_packings(const AdjList& adj, std::size_t max_count,
                                                     const OracleOptions& opt) {
    check_limit(adj, opt);
    if (adj.empty()) return {{}};
    Search s(adj, opt.induced_only);
    Mask all = static_cast<Mask>((std::uint64_t(1) << adj.size()) - 1);
    std::set<std::vector<Cycle>> out;
    std::vector<Cycle> cur;
    s.all(all, cur, out, max_count);
    std::vector<std::vector<Cycle>> res;
    for (auto p : out) {
        for (auto& c : p) c = canonical_cycle(c);
        std::sort(p.begin(), p.end());
        res.push_back(p);
    }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
}

bool verify_solution(const AdjList& adj, const std::vector<Cycle>& cycles) {
    std::vector<char> used(adj.size(), 0);
    auto adjacent = [&](int u, int v) {
        return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
    };
    for (const auto& c : cycles) {
        if (c.size() < 3) return false;
        for (int v : c) {
            if (v < 0 || v >= static_cast<int>(adj.size())) return false;
            if (used[v]) return false;
            used[v] = 1;
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!adjacent(c[i], c[(i + 1) % c.size()])) return false;
    }
    return true;
}

}  // namespace udgcp
