#include "reflector_ot/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "reflector_ot/errors.hpp"

namespace reflector_ot {

double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool in_circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p, double rel_tol) {
  const double ax = a.x - p.x, ay = a.y - p.y;
  const double bx = b.x - p.x, by = b.y - p.y;
  const double cx = c.x - p.x, cy = c.y - p.y;
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double det = ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
  // scale of the determinant's terms, for a relative strictness threshold
  const double scale = std::abs(ax * by * c2) + std::abs(ax * b2 * cy) + std::abs(ay * bx * c2) +
                       std::abs(ay * b2 * cx) + std::abs(a2 * bx * cy) + std::abs(a2 * by * cx);
  return det > rel_tol * scale;
}

namespace {

struct Tri {
  std::array<int, 3> v;
  bool alive = true;
};

using Edge = std::pair<int, int>;

struct EdgeHash {
  std::size_t operator()(const Edge& e) const {
    return std::hash<std::uint64_t>()((std::uint64_t(std::uint32_t(e.first)) << 32) |
                                      std::uint32_t(e.second));
  }
};

}  // namespace

std::vector<std::array<int, 3>> delaunay_triangulate(std::span<const Vec2> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw DegenerateMeshError("delaunay: fewer than 3 points");

  double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
  double ymin = xmin, ymax = xmax;
  for (const Vec2& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-30});
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);

  std::vector<Vec2> pts(points.begin(), points.end());
  // super-triangle well clear of the data
  const double big = 64.0 * span;
  pts.push_back({cx - big, cy - big});
  pts.push_back({cx + big, cy - big});
  pts.push_back({cx, cy + big});
  const int s0 = n, s1 = n + 1, s2 = n + 2;

  std::vector<Tri> tris;
  tris.push_back({{s0, s1, s2}, true});

  std::vector<int> bad;
  std::unordered_map<Edge, int, EdgeHash> boundary;
  for (int ip = 0; ip < n; ++ip) {
    const Vec2 p = pts[ip];
    bad.clear();
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      if (!tris[t].alive) continue;
      const auto& v = tris[t].v;
      if (in_circumcircle(pts[v[0]], pts[v[1]], pts[v[2]], p)) bad.push_back(t);
    }
    if (bad.empty()) {
      // point on/outside the current hull within tolerance; widen the test
      for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        if (!tris[t].alive) continue;
        const auto& v = tris[t].v;
        if (in_circumcircle(pts[v[0]], pts[v[1]], pts[v[2]], p, -1e-12)) {
          bad.push_back(t);
          break;
        }
      }
      if (bad.empty()) throw DegenerateMeshError("delaunay: no cavity for inserted point");
    }
    boundary.clear();
    for (int t : bad) {
      const auto& v = tris[t].v;
      for (int e = 0; e < 3; ++e) {
        const int a = v[e], b = v[(e + 1) % 3];
        const Edge key{std::min(a, b), std::max(a, b)};
        auto [it, inserted] = boundary.try_emplace(key, 0);
        it->second++;
      }
      tris[t].alive = false;
    }
    // re-walk bad triangles to recover oriented boundary edges (count == 1);
    // copy the vertices, push_back below may reallocate the triangle pool
    for (int t : bad) {
      const std::array<int, 3> v = tris[t].v;
      for (int e = 0; e < 3; ++e) {
        const int a = v[e], b = v[(e + 1) % 3];
        const Edge key{std::min(a, b), std::max(a, b)};
        if (boundary.at(key) == 1) {
          std::array<int, 3> nv{a, b, ip};
          if (orient2d(pts[nv[0]], pts[nv[1]], pts[nv[2]]) < 0.0) std::swap(nv[0], nv[1]);
          tris.push_back({nv, true});
        }
      }
    }
  }

  std::vector<std::array<int, 3>> out;
  out.reserve(tris.size());
  for (const Tri& t : tris) {
    if (!t.alive) continue;
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    if (std::abs(orient2d(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]])) <= 0.0) continue;
    out.push_back(t.v);
  }
  if (out.empty()) throw DegenerateMeshError("delaunay: no interior triangles (collinear input?)");
  return out;
}

}  // namespace reflector_ot
