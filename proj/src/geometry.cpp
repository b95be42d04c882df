#include "udgcp/geometry.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace udgcp {

int orient_sign(const Point& a, const Point& b, const Point& c) {
    long double det = (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
                      (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
    long double mag = std::fabs((static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y)) +
                      std::fabs((static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x));
    if (std::fabs(det) > mag * 1e-15L) return det > 0 ? 1 : -1;
    mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    mpq_class d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sgn(d);
}

bool within_unit(const Point& a, const Point& b) {
    long double dx = static_cast<long double>(a.x) - b.x;
    long double dy = static_cast<long double>(a.y) - b.y;
    long double d2 = dx * dx + dy * dy;
    if (std::fabs(d2 - 1.0L) > 1e-12L) return d2 <= 1.0L;
    mpq_class ex = mpq_class(a.x) - mpq_class(b.x);
    mpq_class ey = mpq_class(a.y) - mpq_class(b.y);
    return ex * ex + ey * ey <= 1;
}

bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    if (std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x) ||
        std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y))
        return false;
    int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

Point line_intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
    long double rx = static_cast<long double>(b.x) - a.x, ry = static_cast<long double>(b.y) - a.y;
    long double sx = static_cast<long double>(d.x) - c.x, sy = static_cast<long double>(d.y) - c.y;
    long double den = rx * sy - ry * sx;
    long double t = ((static_cast<long double>(c.x) - a.x) * sy - (static_cast<long double>(c.y) - a.y) * sx) / den;
    return {static_cast<double>(a.x + t * rx), static_cast<double>(a.y + t * ry)};
}

std::optional<std::pair<long double, long double>> segment_params(GPoint a, GPoint b, GPoint c, GPoint d,
                                                                  long double eps) {
    GPoint r = b - a, s = d - c;
    long double den = cross(r, s);
    if (std::fabs(den) <= eps) return std::nullopt;
    GPoint ca = c - a;
    long double t = cross(ca, s) / den;
    long double u = cross(ca, r) / den;
    if (t <= eps || t >= 1 - eps || u <= eps || u >= 1 - eps) return std::nullopt;
    return std::make_pair(t, u);
}

long double point_segment_distance(GPoint p, GPoint a, GPoint b) {
    GPoint ab = b - a;
    long double l2 = dot(ab, ab);
    if (l2 == 0) return std::sqrt(dist2(p, a));
    long double t = std::clamp(dot(p - a, ab) / l2, 0.0L, 1.0L);
    return std::sqrt(dist2(p, a + t * ab));
}

}  // namespace udgcp
