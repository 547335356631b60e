#include "reflector_ot/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "reflector_ot/delaunay.hpp"
#include "reflector_ot/errors.hpp"

namespace reflector_ot {

namespace {

constexpr double kPi = std::numbers::pi;
const double kGoldenAngle = kPi * (3.0 - std::sqrt(5.0));

double cap_measure(double planar_radius) {
  return 2.0 * kPi * (1.0 - std::sqrt(1.0 - planar_radius * planar_radius));
}

int rim_count(double rim_radius, double spacing) {
  return std::max(6, static_cast<int>(std::llround(2.0 * kPi * rim_radius / spacing)));
}

/// Sunflower interior plus an evenly spaced rim ring. `radial(t)` maps an
/// area fraction t in (0,1) to a planar radius; the cap version uses it to
/// equidistribute spherical measure.
template <typename RadialMap>
void sunflower_layout(TriMesh& mesh, double rim_radius, int n, double spacing, RadialMap radial) {
  const int nb = rim_count(rim_radius, spacing);
  const int ni = std::max(1, n - nb);
  mesh.samples.reserve(ni + nb);
  mesh.boundary.reserve(ni + nb);
  for (int k = 0; k < ni; ++k) {
    const double t = (k + 0.5) / ni;
    const double r = radial(t);
    const double th = k * kGoldenAngle;
    mesh.samples.push_back({r * std::cos(th), r * std::sin(th)});
    mesh.boundary.push_back(0);
  }
  for (int q = 0; q < nb; ++q) {
    const double th = 2.0 * kPi * q / nb;
    mesh.samples.push_back({rim_radius * std::cos(th), rim_radius * std::sin(th)});
    mesh.boundary.push_back(1);
  }
}

std::vector<double> lumped_weights(const std::vector<Vec2>& pts,
                                   const std::vector<std::array<int, 3>>& tris) {
  std::vector<double> w(pts.size(), 0.0);
  for (const auto& t : tris) {
    const double area = 0.5 * std::abs(orient2d(pts[t[0]], pts[t[1]], pts[t[2]]));
    for (int c = 0; c < 3; ++c) w[t[c]] += area / 3.0;
  }
  return w;
}

void rescale_to_measure(std::vector<double>& w, double measure) {
  double sum = 0.0;
  for (double v : w) sum += v;
  if (sum <= 0.0) throw DegenerateMeshError("mesh: nonpositive total weight");
  const double s = measure / sum;
  for (double& v : w) v *= s;
}

}  // namespace

double TriMesh::aperture_measure() const {
  return kind == MeshKind::Disk ? kPi * radius * radius : cap_measure(radius);
}

double TriMesh::mean_edge_length() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) edges.insert(std::minmax(t[e], t[(e + 1) % 3]));
  double sum = 0.0;
  for (auto [a, b] : edges) {
    if (kind == MeshKind::SphericalCap) {
      const auto &u = lifted[a], &v = lifted[b];
      const Vec2 d = u.mx - v.mx;
      const double dz = u.mz - v.mz;
      sum += std::sqrt(d.norm2() + dz * dz);
    } else {
      sum += (samples[a] - samples[b]).norm();
    }
  }
  return sum / static_cast<double>(edges.size());
}

int estimate_point_count(double h, double area) {
  if (h <= 0.0 || area <= 0.0) throw OutOfRangeError("estimate_point_count: nonpositive input");
  return static_cast<int>(std::llround(area / (kMeshDensityKappa * h * h)));
}

TriMesh disk_mesh_with_count(double radius, int n, double target_edge) {
  if (radius <= 0.0) throw OutOfRangeError("disk_mesh: radius <= 0");
  if (n < 3) throw DegenerateMeshError("disk_mesh: fewer than 3 samples requested");
  const double area = kPi * radius * radius;
  const double spacing = std::sqrt(2.0 * area / (std::sqrt(3.0) * n));
  const double inner = std::max(0.0, radius - spacing);

  TriMesh mesh;
  mesh.kind = MeshKind::Disk;
  mesh.radius = radius;
  mesh.target_edge = target_edge > 0.0 ? target_edge : spacing;
  sunflower_layout(mesh, radius, n, spacing, [&](double t) { return inner * std::sqrt(t); });
  mesh.triangles = delaunay_triangulate(mesh.samples);
  mesh.weights = lumped_weights(mesh.samples, mesh.triangles);
  rescale_to_measure(mesh.weights, area);
  return mesh;
}

TriMesh disk_mesh(double radius, double h) {
  if (h <= 0.0 || h >= 1.0)
    throw OutOfRangeError("disk_mesh: relative edge length h outside (0, 1)");
  const int n = estimate_point_count(h, kPi);
  return disk_mesh_with_count(radius, n, h * radius);
}

TriMesh cap_mesh_with_count(double planar_radius, int n, double target_edge) {
  if (planar_radius <= 0.0 || planar_radius >= 1.0)
    throw OutOfRangeError("cap_mesh: planar radius outside (0, 1)");
  if (n < 3) throw DegenerateMeshError("cap_mesh: fewer than 3 samples requested");
  const double measure = cap_measure(planar_radius);
  const double spacing = std::sqrt(2.0 * measure / (std::sqrt(3.0) * n));
  const double mz_rim = std::sqrt(1.0 - planar_radius * planar_radius);
  // interior reaches one spherical spacing below the rim (planar gap ~ |mz| d)
  const double inner = std::max(0.0, planar_radius - mz_rim * spacing);
  const double u_inner = 1.0 - std::sqrt(1.0 - inner * inner);

  TriMesh mesh;
  mesh.kind = MeshKind::SphericalCap;
  mesh.radius = planar_radius;
  mesh.target_edge = target_edge > 0.0 ? target_edge : spacing;
  sunflower_layout(mesh, planar_radius, n, spacing, [&](double t) {
    const double u = u_inner * t;  // equal spherical-area increments
    return std::sqrt(u * (2.0 - u));
  });
  mesh.triangles = delaunay_triangulate(mesh.samples);

  mesh.lifted.reserve(mesh.samples.size());
  for (const Vec2& p : mesh.samples) {
    UnitDirection m = UnitDirection::from_planar(p);
    if (1.0 + m.mz < 1e-8) throw PoleSingularityError("cap_mesh: sample within 1e-8 of the pole");
    mesh.lifted.push_back(m);
  }
  mesh.weights = lumped_weights(mesh.samples, mesh.triangles);
  for (std::size_t i = 0; i < mesh.weights.size(); ++i)
    mesh.weights[i] /= std::abs(mesh.lifted[i].mz);
  rescale_to_measure(mesh.weights, measure);
  return mesh;
}

TriMesh cap_mesh(double planar_radius, double h) {
  if (h <= 0.0) throw OutOfRangeError("cap_mesh: h <= 0");
  const int n = estimate_point_count(h, cap_measure(planar_radius));
  return cap_mesh_with_count(planar_radius, n, h);
}

int pick_anchor(TriMesh& mesh, const UnitDirection& m1) {
  if (mesh.kind != MeshKind::SphericalCap || mesh.lifted.empty())
    throw OutOfRangeError("pick_anchor: requires a cap mesh");
  int best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (int i = 0; i < mesh.size(); ++i) {
    const Vec2 d = mesh.lifted[i].mx - m1.mx;
    const double dz = mesh.lifted[i].mz - m1.mz;
    const double dist = d.norm2() + dz * dz;
    if (dist < best_d) {
      best_d = dist;
      best = i;
    }
  }
  if (best != 0) {
    std::swap(mesh.samples[0], mesh.samples[best]);
    std::swap(mesh.weights[0], mesh.weights[best]);
    std::swap(mesh.lifted[0], mesh.lifted[best]);
    std::swap(mesh.boundary[0], mesh.boundary[best]);
    for (auto& t : mesh.triangles)
      for (int c = 0; c < 3; ++c) {
        if (t[c] == 0)
          t[c] = best;
        else if (t[c] == best)
          t[c] = 0;
      }
  }
  return best;
}

}  // namespace reflector_ot
