#pragma once

// Random paths across an annulus, shared by the unit tests and the acceptance run.

#include <random>
#include <vector>

#include "udgcp/parity.hpp"

namespace fuzz {

using udgcp::GPoint;
using udgcp::Polyline;

inline udgcp::Point pt(GPoint p) { return {static_cast<double>(p.x), static_cast<double>(p.y)}; }

// Closed segments meet, exact on the double-rounded coordinates.
inline bool meet(GPoint a, GPoint b, GPoint c, GPoint d) {
    auto A = pt(a), B = pt(b), C = pt(c), D = pt(d);
    int o1 = udgcp::orient_sign(A, B, C), o2 = udgcp::orient_sign(A, B, D);
    int o3 = udgcp::orient_sign(C, D, A), o4 = udgcp::orient_sign(C, D, B);
    auto on = [](udgcp::Point p, udgcp::Point q, udgcp::Point r) {
        return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
               r.y <= std::max(p.y, q.y);
    };
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return (o1 == 0 && on(A, B, C)) || (o2 == 0 && on(A, B, D)) || (o3 == 0 && on(C, D, A)) ||
           (o4 == 0 && on(C, D, B));
}

inline bool drawings_cross(const Polyline& p, const Polyline& q) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        for (std::size_t j = 0; j + 1 < q.size(); ++j)
            if (meet(p[i], p[i + 1], q[j], q[j + 1])) return true;
    return false;
}

struct Annulus {
    Polyline outer, inner;  // outer counterclockwise, inner clockwise
};

inline Annulus random_annulus(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    Annulus a;
    int no = 24 + static_cast<int>(u(rng) * 24), ni = 12 + static_cast<int>(u(rng) * 12);
    double rot = u(rng) * 6.283185307179586;
    for (int i = 0; i < no; ++i) {
        double th = rot + 6.283185307179586 * i / no, r = 1 + 0.2 * (u(rng) - 0.5);
        a.outer.push_back({r * std::cos(th), r * std::sin(th)});
    }
    double cx = 0.2 * (u(rng) - 0.5), cy = 0.2 * (u(rng) - 0.5), ri = 0.3 + 0.1 * u(rng);
    for (int i = 0; i < ni; ++i) {
        double th = rot - 6.283185307179586 * i / ni, r = ri * (1 + 0.2 * (u(rng) - 0.5));
        a.inner.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
    }
    return a;
}

inline GPoint on_curve(const Polyline& c, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.1, 0.9);
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng);
    return c[i] + static_cast<long double>(u(rng)) * (c[(i + 1) % c.size()] - c[i]);
}

// Simple path from the outer to the inner curve, touching them only at its ends.
inline Polyline random_path(const Annulus& an, const udgcp::ParityFrame& region, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (;;) {
        Polyline p{on_curve(an.outer, rng)};
        int mid = 1 + static_cast<int>(std::uniform_int_distribution<int>(0, 5)(rng));
        while (static_cast<int>(p.size()) <= mid) {
            GPoint q{u(rng), u(rng)};
            if (udgcp::in_region(region, q)) p.push_back(q);
        }
        p.push_back(on_curve(an.inner, rng));
        bool ok = true;
        // trimmed copy so the ends do not count as touching
        Polyline t = p;
        t.front() = t.front() + 1e-9L * (t[1] - t.front());
        t.back() = t.back() + 1e-9L * (t[t.size() - 2] - t.back());
        for (const Polyline* c : {&an.outer, &an.inner})
            for (std::size_t i = 0; ok && i + 1 < t.size(); ++i)
                for (std::size_t j = 0; ok && j < c->size(); ++j)
                    ok = !meet(t[i], t[i + 1], (*c)[j], (*c)[(j + 1) % c->size()]);
        for (std::size_t i = 0; ok && i + 1 < p.size(); ++i)
            for (std::size_t j = i + 2; ok && j + 1 < p.size(); ++j) ok = !meet(p[i], p[i + 1], p[j], p[j + 1]);
        if (ok) return p;
    }
}

struct Outcome {
    int cases = 0;          // cross-ordered pairs with equal parity
    int counterexamples = 0;
    int other_parity = 0;   // cross-ordered pairs with different parity
    int other_disjoint = 0; // ... of which the drawings miss each other
};

// Runs until `want` cross-ordered equal-parity pairs were checked.
inline Outcome run(int want, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Outcome o;
    while (o.cases < want) {
        Annulus an = random_annulus(rng);
        udgcp::ParityFrame region;
        region.curves = {an.outer, an.inner};
        for (int rep = 0; rep < 8 && o.cases < want; ++rep) {
            Polyline p = random_path(an, region, rng), q = random_path(an, region, rng);
            udgcp::ParityFrame f;
            try {
                f = udgcp::make_frame({an.outer, an.inner}, {p.front(), p.back(), q.front(), q.back()});
            } catch (const udgcp::InvariantError&) {
                continue;
            }
            long double x1 = udgcp::frame_position(f, 0, 1, p.front()), y1 = udgcp::frame_position(f, 1, 0, p.back());
            long double x2 = udgcp::frame_position(f, 0, 1, q.front()), y2 = udgcp::frame_position(f, 1, 0, q.back());
            if (!udgcp::cross_ordered(x1, y1, x2, y2)) continue;
            bool same = udgcp::crossing_parity(p, f, 0, 1) == udgcp::crossing_parity(q, f, 0, 1);
            bool cross = drawings_cross(p, q);
            if (same) {
                ++o.cases;
                o.counterexamples += !cross;
            } else {
                ++o.other_parity;
                o.other_disjoint += !cross;
            }
        }
    }
    return o;
}

}  // namespace fuzz
