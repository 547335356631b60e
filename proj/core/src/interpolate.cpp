#include "reflector_ot/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reflector_ot/delaunay.hpp"
#include "reflector_ot/errors.hpp"
#include "reflector_ot/parallel.hpp"

namespace reflector_ot {

PlanarInterpolant::PlanarInterpolant(const TriMesh& mesh, std::span<const double> values)
    : points_(mesh.samples), triangles_(mesh.triangles), values_(values.begin(), values.end()) {
  if (values_.size() != points_.size())
    throw OutOfRangeError("PlanarInterpolant: value count != sample count");

  double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
  double ymin = xmin, ymax = xmax;
  for (const Vec2& p : points_) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span_x = std::max(xmax - xmin, 1e-12), span_y = std::max(ymax - ymin, 1e-12);
  const int target = std::max(1, static_cast<int>(std::sqrt(triangles_.size() / 2.0)));
  nx_ = std::min(target, 512);
  ny_ = nx_;
  x0_ = xmin;
  y0_ = ymin;
  cell_ = std::max(span_x / nx_, span_y / ny_) * (1.0 + 1e-12);
  nx_ = static_cast<int>(span_x / cell_) + 1;
  ny_ = static_cast<int>(span_y / cell_) + 1;
  buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (int t = 0; t < static_cast<int>(triangles_.size()); ++t) {
    const auto& tri = triangles_[t];
    double txmin = points_[tri[0]].x, txmax = txmin, tymin = points_[tri[0]].y, tymax = tymin;
    for (int c = 1; c < 3; ++c) {
      txmin = std::min(txmin, points_[tri[c]].x);
      txmax = std::max(txmax, points_[tri[c]].x);
      tymin = std::min(tymin, points_[tri[c]].y);
      tymax = std::max(tymax, points_[tri[c]].y);
    }
    const int ix0 = std::clamp(static_cast<int>((txmin - x0_) / cell_), 0, nx_ - 1);
    const int ix1 = std::clamp(static_cast<int>((txmax - x0_) / cell_), 0, nx_ - 1);
    const int iy0 = std::clamp(static_cast<int>((tymin - y0_) / cell_), 0, ny_ - 1);
    const int iy1 = std::clamp(static_cast<int>((tymax - y0_) / cell_), 0, ny_ - 1);
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy)
        buckets_[static_cast<std::size_t>(iy) * nx_ + ix].push_back(t);
  }
}

int PlanarInterpolant::locate(Vec2 q, double* bary) const {
  const int ix = static_cast<int>((q.x - x0_) / cell_);
  const int iy = static_cast<int>((q.y - y0_) / cell_);
  if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) return -1;
  constexpr double tol = -1e-12;
  for (int t : buckets_[static_cast<std::size_t>(iy) * nx_ + ix]) {
    const auto& tri = triangles_[t];
    const Vec2 a = points_[tri[0]], b = points_[tri[1]], c = points_[tri[2]];
    const double area = orient2d(a, b, c);
    if (area == 0.0) continue;
    const double l0 = orient2d(q, b, c) / area;
    const double l1 = orient2d(a, q, c) / area;
    const double l2 = 1.0 - l0 - l1;
    if (l0 >= tol && l1 >= tol && l2 >= tol) {
      bary[0] = l0;
      bary[1] = l1;
      bary[2] = l2;
      return t;
    }
  }
  return -1;
}

int PlanarInterpolant::nearest(Vec2 q) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    const double d = (points_[i] - q).norm2();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double PlanarInterpolant::operator()(Vec2 q) const {
  double bary[3];
  const int t = locate(q, bary);
  if (t < 0) return values_[nearest(q)];
  const auto& tri = triangles_[t];
  return bary[0] * values_[tri[0]] + bary[1] * values_[tri[1]] + bary[2] * values_[tri[2]];
}

std::vector<double> PlanarInterpolant::evaluate(std::span<const Vec2> queries) const {
  std::vector<double> out(queries.size());
  parallel_for(0, queries.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) out[k] = (*this)(queries[k]);
  });
  return out;
}

}  // namespace reflector_ot
