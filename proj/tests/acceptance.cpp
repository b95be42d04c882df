// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "annulus_fuzz.hpp"
#include "udgcp/cac.hpp"
#include "udgcp/cycle_separator.hpp"
#include "udgcp/dp.hpp"
#include "udgcp/generators.hpp"
#include "udgcp/oracle.hpp"
#include "udgcp/sc_decomp.hpp"
#include "udgcp/solution_structure.hpp"
#include "udgcp/surface_decomp.hpp"
#include "udgcp/udg.hpp"

using namespace udgcp;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int heavy_count(const UnitDiskGraph& g) {
    int l = 0;
    for (int v = 0; v < g.n(); ++v) l += g.degree(v) >= 3;
    return l;
}

// The small-instance suite shared by criteria 1 and 10: n from 3 to 14, square
// side from 0.3 (near-clique) to 3.45 (mostly edgeless).
UnitDiskGraph small_instance(int i) {
    int n = 3 + i % 12;
    double side = 0.3 + ((i / 12) % 10) * 0.35;
    return build_udg(uniform_points(n, side, 5000 + i));
}

// Independent re-derivation of the separator audit.
bool simple_cycle(const PlaneGraph& h, const std::vector<int>& cyc, const std::vector<int>& edges) {
    if (cyc.size() < 3 || edges.size() != cyc.size()) return false;
    std::set<int> vs(cyc.begin(), cyc.end()), es(edges.begin(), edges.end());
    if (vs.size() != cyc.size() || es.size() != edges.size()) return false;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        auto [a, b] = h.edges[edges[i]];
        int x = cyc[i], y = cyc[(i + 1) % cyc.size()];
        if (!((a == x && b == y) || (a == y && b == x))) return false;
    }
    return true;
}

double balance(const PlaneGraph& h, const std::vector<int>& cyc) {
    std::vector<char> cut(h.n(), 0), seen(h.n(), 0);
    for (int v : cyc) cut[v] = 1;
    double tot = std::accumulate(h.b.begin(), h.b.end(), 0.0), worst = 0;
    for (int s = 0; s < h.n(); ++s) {
        if (cut[s] || seen[s]) continue;
        double w = 0;
        std::vector<int> st{s};
        seen[s] = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            w += h.b[v];
            for (int u : h.neighbours(v))
                if (!cut[u] && !seen[u]) seen[u] = 1, st.push_back(u);
        }
        worst = std::max(worst, w);
    }
    return tot > 0 ? worst / tot : 0;
}

void oracle_equivalence() {
    int mism = 0, slow = 0, edgeless = 0, near_clique = 0;
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        auto g = small_instance(i);
        edgeless += g.m() == 0;
        near_clique += g.n() >= 6 && 2 * g.m() >= g.n() * (g.n() - 1) * 9 / 10;
        auto t0 = std::chrono::steady_clock::now();
        SolveOptions so;
        so.mode = Mode::Standard;
        auto r = solve(g, 1, so);
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        slow += dt >= 10;
        int want = max_cycle_packing(g.adj).value;
        if (r.value != want || !verify_solution(g.adj, r.cycles) || static_cast<int>(r.cycles.size()) != std::min(want, 1))
            ++mism;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "500 instances, %d mismatches, %d over 10 s (max %.2f s), %d edgeless, %d near-clique", mism,
                  slow, worst, edgeless, near_clique);
    report(1, "oracle equivalence", mism == 0 && slow == 0 && edgeless > 0 && near_clique > 0, buf);
}

void icf() {
    long long crossings = 0, bad = 0;
    for (int i = 0; i < 1000; ++i) {
        int n = 2 + i % 199;
        double side = std::sqrt(n / (0.5 + (i % 9) * 0.6));
        auto pts = i % 4 == 3 ? clustered_points(n, side, 1 + n / 40, 0.8, 7000 + i) : uniform_points(n, side, 7000 + i);
        auto g = build_udg(pts);
        auto rep = check_icf(g);
        crossings += find_crossings(g).size();
        bad += rep.violations.size() + (rep.ok ? 0 : rep.violations.empty());
    }
    report(2, "icf property", bad == 0 && crossings > 0,
           "1000 graphs, " + std::to_string(crossings) + " crossings, " + std::to_string(bad) + " violations");
}

void separator() {
    int bad = 0;
    double worst_bal = 0, worst_w = 0;
    for (int i = 0; i < 300; ++i) {
        int n = 4 + (i * 53) % 497;
        auto h = random_triangulation(n, 11000 + i, 1, 4);
        auto r = balanced_small_separator(h);
        double c2 = 0;
        for (double c : h.c) c2 += c * c;
        double bal = balance(h, r.cycle);
        double w = 0;
        for (int v : r.cycle) w += h.c[v];
        bool ok = simple_cycle(h, r.cycle, r.cycle_edges) && bal <= 8.0 / 9.0 && w <= 10 * std::sqrt(c2);
        bad += !ok;
        worst_bal = std::max(worst_bal, bal);
        worst_w = std::max(worst_w, w / std::sqrt(c2));
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "300 triangulations, %d violations, max balance %.4f, max weight/sqrt(sum c^2) %.3f", bad,
                  worst_bal, worst_w);
    report(3, "separator guarantees", bad == 0, buf);
}

void cycle_sequence() {
    int built = 0, bad = 0;
    auto check = [&](const PlaneGraph& h) {
        auto lt = build_level_tree(h, 0);
        auto s = fundamental_cycle_separator(h, lt);
        double cs = cstar_of(h), c2 = 0;
        for (double c : h.c) c2 += c * c;
        if (s.weight <= 8 * cs) return;
        ++built;
        auto seq = build_cycle_sequence(h, lt, s);
        std::set<int> seen;
        double total = 0;
        bool ok = std::abs(cs - std::sqrt(c2)) <= 1e-9 * cs;
        for (std::size_t i = 0; i < seq.cycles.size(); ++i) {
            double w = 0;
            for (int v : seq.cycles[i]) {
                w += h.c[v];
                ok = ok && seen.insert(v).second;
            }
            ok = ok && w <= cs && simple_cycle(h, seq.cycles[i], seq.cycle_edges[i]);
            total += w;
        }
        bad += !(ok && total <= cs);
    };
    for (int i = 0; i < 60; ++i) check(triangulated_tube(100 + 40 * i, 3 + i % 4));
    for (int i = 0; i < 300; ++i) check(random_triangulation(4 + (i * 53) % 497, 11000 + i, 1, 4));
    report(4, "cycle sequence", bad == 0 && built > 0,
           std::to_string(built) + " sequences built, " + std::to_string(bad) + " violations");
}

void decompositions() {
    int bad = 0, spread = 0;
    std::string first;
    for (int i = 0; i < 200; ++i) {
        int n = 10 + (i * 29) % 400;
        double side = std::sqrt(n / (0.8 + (i % 6) * 0.6));
        auto pts = i % 3 == 2 ? clustered_points(n, side, 1 + n / 50, 1.0, 13000 + i) : uniform_points(n, side, 13000 + i);
        auto g = build_udg(pts);
        auto p = build_pipeline(g);
        auto s = check_surface(p.sd);
        auto a = check_sc(p.sc, g, p.map, 8);
        spread = std::max(spread, a.c4_spread);
        if (!s.ok() || !a.ok() || a.c4_spread > 8) {
            ++bad;
            if (first.empty()) first = " (instance " + std::to_string(i) + ": " + s.detail + a.detail + ")";
        }
    }
    report(5, "decomposition validity", bad == 0,
           "200 decompositions, " + std::to_string(bad) + " failures, max C4 spread " + std::to_string(spread) + " of 8" +
               first);
}

void width_trend() {
    struct Row {
        int ell;
        double width;
    };
    std::vector<Row> rows;
    for (int i = 0; i < 240; ++i) {
        int n = 20 + (i * 37) % 1000;
        double side = std::sqrt(n / (0.8 + (i % 7) * 0.5));
        auto pts = i % 5 == 4 ? clustered_points(n, side, 1 + n / 60, 1.0 + side / 8, 9000 + i)
                              : uniform_points(n, side, 9000 + i);
        auto g = build_udg(pts);
        int ell = heavy_count(g);
        if (ell == 0 || ell > 800) continue;
        rows.push_back({ell, build_pipeline(g).sc.width});
    }
    double K = 0;
    int train = 0, held = 0, bad = 0;
    for (auto& r : rows)
        if (r.ell <= 200) K = std::max(K, r.width / std::sqrt(r.ell)), ++train;
    double worst = 0;
    for (auto& r : rows)
        if (r.ell > 200) {
            ++held;
            worst = std::max(worst, r.width / std::sqrt(r.ell));
            bad += r.width > 1.1 * K * std::sqrt(r.ell);
        }
    char buf[200];
    std::snprintf(buf, sizeof buf, "K=%.3f from %d instances (l<=200); %d held-out (200<l<=800), max ratio %.3f, %d over 1.1K",
                  K, train, held, worst, bad);
    report(6, "width trend", bad == 0 && train > 20 && held > 20, buf);
}

void cac() {
    int bad = 0;
    const long long catalan[] = {1, 1, 2, 5, 14, 42, 132};
    for (int m = 1; m <= 6; ++m)
        for (int z = 1; z <= 3; ++z) {
            auto a = enumerate_kzz_free(m, z), b = enumerate_kzz_free_filter(m, z);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            bad += a != b;
            long long dfact = 1;
            for (int k = 2 * m - 1; k > 1; k -= 2) dfact *= k;
            if (z == 1) bad += static_cast<long long>(a.size()) != catalan[m];
            if (z >= m) bad += static_cast<long long>(a.size()) != dfact;
        }
    report(7, "CAC enumeration", bad == 0, "m<=6, z in {1,2,3}: " + std::to_string(bad) + " mismatches");
}

void parity() {
    auto o = fuzz::run(10000, 20240);
    report(8, "crossing parity", o.cases >= 10000 && o.counterexamples == 0,
           std::to_string(o.cases) + " equal-parity cross-ordered pairs, " + std::to_string(o.counterexamples) +
               " counterexamples (" + std::to_string(o.other_parity) + " unequal-parity pairs, " +
               std::to_string(o.other_disjoint) + " disjoint)");
}

void dense() {
    int bad = 0, made = 0;
    double thr = dense_threshold(61);
    for (int i = 0; made < 100; ++i) {
        int k = 1 + i % 3;
        double dens = 1.5 + (i % 5) * 0.75;
        int n = static_cast<int>(thr * k * 1.15) + 50 * (i % 4);
        double side = std::sqrt(n / dens);
        auto pts = i % 4 == 1 ? clustered_points(n, side, 2 + i % 5, side / 5, 15000 + i) : uniform_points(n, side, 15000 + i);
        auto g = build_udg(pts);
        if (heavy_count(g) <= thr * k) continue;  // not above the threshold
        ++made;
        auto r = dense_extract(g, k);
        bad += !r || static_cast<int>(r->cycles.size()) != k || !verify_solution(g.adj, r->cycles);
    }
    report(9, "dense extraction", bad == 0,
           "100 instances above " + std::to_string(static_cast<int>(thr)) + "k heavy vertices, " + std::to_string(bad) +
               " failures");
}

void refined() {
    int match = 0, aborts = 0, silent = 0;
    for (int i = 0; i < 500; ++i) {
        auto g = small_instance(i);
        SolveOptions so;
        auto st = solve(g, 1, so);
        so.mode = Mode::Refined;
        so.z = 3;
        auto rf = solve(g, 1, so);
        if (rf.stats.z_too_small)
            ++aborts;
        else if (rf.value == st.value)
            ++match;
        silent += rf.value != st.value;
    }
    report(10, "refined consistency", silent == 0,
           "500 instances: " + std::to_string(match) + " match, " + std::to_string(aborts) + " z-too-small aborts, " +
               std::to_string(silent) + " silent mismatches");
}

}  // namespace

int main() {
    oracle_equivalence();
    icf();
    separator();
    cycle_sequence();
    decompositions();
    width_trend();
    cac();
    parity();
    dense();
    refined();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
