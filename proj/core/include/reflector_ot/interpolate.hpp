#pragma once

#include <span>
#include <vector>

#include "reflector_ot/mesh.hpp"

namespace reflector_ot {

/// Piecewise-linear interpolant of nodal values over a planar triangulation,
/// with nearest-sample fallback for queries outside the convex hull. Point
/// location uses a uniform grid of triangle buckets.
class PlanarInterpolant {
public:
  PlanarInterpolant(const TriMesh& mesh, std::span<const double> values);

  /// Value at q: barycentric interpolation inside the containing triangle,
  /// nearest sample's value otherwise.
  double operator()(Vec2 q) const;

  /// Batch evaluation, parallel over queries.
  std::vector<double> evaluate(std::span<const Vec2> queries) const;

private:
  std::vector<Vec2> points_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<double> values_;
  // grid buckets over the bounding box
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;

  int locate(Vec2 q, double* bary) const;
  int nearest(Vec2 q) const;
};

}  // namespace reflector_ot
