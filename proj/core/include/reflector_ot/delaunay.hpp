#pragma once

#include <array>
#include <span>
#include <vector>

#include "reflector_ot/geometry.hpp"

namespace reflector_ot {

/// Delaunay triangulation of a planar point set (Bowyer-Watson, incremental).
/// Triangles are CCW index triples into the input array. Near-cocircular
/// configurations (e.g. points on a common circle) are resolved by a relative
/// tolerance; the result is Delaunay up to that tolerance.
std::vector<std::array<int, 3>> delaunay_triangulate(std::span<const Vec2> points);

/// Signed doubled area of triangle (a,b,c); positive when CCW.
double orient2d(Vec2 a, Vec2 b, Vec2 c);

/// True when p lies strictly inside the circumcircle of CCW triangle (a,b,c),
/// beyond a relative tolerance.
bool in_circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p, double rel_tol = 1e-12);

}  // namespace reflector_ot
