#pragma once

#include <cmath>
#include <optional>

namespace udgcp {

struct Point {
    double x = 0, y = 0;
    bool operator==(const Point&) const = default;
};

// Grid-space coordinates (cells are unit squares).
struct GPoint {
    long double x = 0, y = 0;
};

inline GPoint operator-(GPoint a, GPoint b) { return {a.x - b.x, a.y - b.y}; }
inline GPoint operator+(GPoint a, GPoint b) { return {a.x + b.x, a.y + b.y}; }
inline GPoint operator*(long double s, GPoint a) { return {s * a.x, s * a.y}; }
inline long double cross(GPoint a, GPoint b) { return a.x * b.y - a.y * b.x; }
inline long double dot(GPoint a, GPoint b) { return a.x * b.x + a.y * b.y; }
inline long double orient(GPoint a, GPoint b, GPoint c) { return cross(b - a, c - a); }
inline long double dist2(GPoint a, GPoint b) { return dot(a - b, a - b); }

/// Exact sign of orient(a,b,c) for double inputs (filter + rational fallback).
int orient_sign(const Point& a, const Point& b, const Point& c);

/// Exact test: squared distance between a and b is <= 1.
bool within_unit(const Point& a, const Point& b);

/// Proper crossing of closed segments ab and cd: interiors meet in one point and
/// no endpoint lies on the other segment. Exact for double inputs.
bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d);

/// Intersection point of the supporting lines of ab and cd (caller ensures a crossing).
Point line_intersection(const Point& a, const Point& b, const Point& c, const Point& d);

/// Parameters (s along ab, t along cd) of the crossing of two grid-space segments,
/// if their interiors cross transversally with margin eps.
std::optional<std::pair<long double, long double>> segment_params(GPoint a, GPoint b, GPoint c, GPoint d,
                                                                  long double eps = 1e-12L);

/// Closest distance from p to segment ab.
long double point_segment_distance(GPoint p, GPoint a, GPoint b);

}  // namespace udgcp
