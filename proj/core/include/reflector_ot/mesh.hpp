#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "reflector_ot/geometry.hpp"

namespace reflector_ot {

enum class MeshKind { Disk, SphericalCap };

/// Triangulated sample mesh for one aperture, with per-sample quadrature
/// weights (planar area for disks, solid-angle measure for caps).
///
/// Samples are stored in planar coordinates: physical (x,y) for a disk, the
/// projection (mx,my) for a cap. Cap samples additionally carry their lifted
/// unit directions. Weights are barycentric lumped triangle areas (caps:
/// divided by |mz| at the sample), rescaled so they sum to the exact aperture
/// measure (pi r^2 for a disk, 2 pi (1 - sqrt(1 - r^2)) for a cap).
///
/// The edge-length parameter h of the constructors is relative to the
/// aperture's intrinsic scale: the unit sphere for caps (so h is the physical
/// target on the sphere) and the disk radius for disks (physical target
/// h * radius).
struct TriMesh {
  MeshKind kind = MeshKind::Disk;
  double radius = 1.0;       ///< disk radius, or cap planar rim radius
  double target_edge = 0.0;  ///< physical mean-edge target
  std::vector<Vec2> samples;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> weights;
  std::vector<UnitDirection> lifted;   ///< cap meshes only
  std::vector<std::uint8_t> boundary;  ///< 1 when the sample lies on the rim

  int size() const { return static_cast<int>(samples.size()); }
  /// Exact measure of the aperture this mesh discretizes.
  double aperture_measure() const;
  /// Mean edge length in the aperture's own metric (3D chords for caps).
  double mean_edge_length() const;
  bool on_boundary(int i) const { return boundary[i] != 0; }
};

/// round(area / (kappa h^2)) with kappa calibrated once against the reference
/// mesh cardinalities; see kMeshDensityKappa.
int estimate_point_count(double h, double area);

inline constexpr double kMeshDensityKappa = 0.66;

/// Planar disk mesh of the given radius at relative edge length h.
TriMesh disk_mesh(double radius, double h);

/// Spherical-cap mesh (mz < 0) with the given planar rim radius, built in
/// planar coordinates and lifted; h is the target edge length on the sphere.
TriMesh cap_mesh(double planar_radius, double h);

/// Count-targeted variants (the h-based constructors call these).
TriMesh disk_mesh_with_count(double radius, int n, double target_edge = 0.0);
TriMesh cap_mesh_with_count(double planar_radius, int n, double target_edge = 0.0);

/// Find the cap sample nearest to m1 (3D distance) and swap it into slot 0,
/// remapping triangles. Returns the sample's index before the reorder.
int pick_anchor(TriMesh& mesh, const UnitDirection& m1);

}  // namespace reflector_ot
