#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "udgcp/geometry.hpp"
#include "udgcp/plane.hpp"

namespace udgcp {

/// n points uniform in [0, side]^2.
std::vector<Point> uniform_points(int n, double side, std::uint64_t seed);
/// n points around `clusters` random centres with Gaussian spread sigma, in [0, side]^2.
std::vector<Point> clustered_points(int n, double side, int clusters, double sigma, std::uint64_t seed);

/// Random simple triangulation of the sphere with n >= 4 vertices (stacking plus
/// random flips), with c uniform in [cmin, cmax] and b = c.
PlaneGraph random_triangulation(int n, std::uint64_t seed, double cmin = 1, double cmax = 1);

/// Cylinder of `rings` cycles of `width` vertices, capped by vertex 0 and vertex n-1.
/// Unit weights; long tubes force long balanced fundamental cycles.
PlaneGraph triangulated_tube(int rings, int width);

}  // namespace udgcp
