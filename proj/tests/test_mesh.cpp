#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "reflector_ot/delaunay.hpp"
#include "reflector_ot/mesh.hpp"
#include "reflector_ot/quadrature.hpp"

using namespace reflector_ot;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCapMeasure = 2.0 * kPi * 0.4;  // planar radius 0.8

void check_mesh_invariants(const TriMesh& mesh) {
  double sum = 0.0;
  std::set<int> used;
  for (int i = 0; i < mesh.size(); ++i) {
    CHECK(mesh.weights[i] > 0.0);
    sum += mesh.weights[i];
  }
  CHECK(sum == doctest::Approx(mesh.aperture_measure()).epsilon(5e-3));
  for (const auto& t : mesh.triangles)
    for (int c = 0; c < 3; ++c) used.insert(t[c]);
  CHECK(static_cast<int>(used.size()) == mesh.size());
  // triangle areas sum to the hull area, no overlaps: positive orientation
  for (const auto& t : mesh.triangles)
    CHECK(orient2d(mesh.samples[t[0]], mesh.samples[t[1]], mesh.samples[t[2]]) > 0.0);
}
}  // namespace

TEST_CASE("estimate_point_count reference cardinalities") {
  CHECK(estimate_point_count(0.12, kCapMeasure) >= 240);
  CHECK(estimate_point_count(0.12, kCapMeasure) <= 340);
  // within 10% of the 284-point reference at the calibration h
  CHECK(std::abs(estimate_point_count(0.12, kCapMeasure) - 284) <= 28);
  CHECK(estimate_point_count(0.0768, kCapMeasure) >= 620);
  CHECK(estimate_point_count(0.0768, kCapMeasure) <= 830);
  CHECK(estimate_point_count(0.049152, kCapMeasure) >= 1500);
  CHECK(estimate_point_count(0.049152, kCapMeasure) <= 2200);
  // halving h quadruples the estimate (up to rounding)
  const double n1 = estimate_point_count(0.05, 3.0);
  const double n2 = estimate_point_count(0.10, 3.0);
  CHECK(n1 / n2 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("disk_mesh reference size and invariants") {
  const TriMesh mesh = disk_mesh(17.0 / 9.0, 0.12);
  CHECK(mesh.size() >= 240);
  CHECK(mesh.size() <= 340);
  check_mesh_invariants(mesh);
  CHECK(mesh.mean_edge_length() / mesh.target_edge > 0.8);
  CHECK(mesh.mean_edge_length() / mesh.target_edge < 1.2);
}

TEST_CASE("disk_mesh tiny case conserves area") {
  const TriMesh mesh = disk_mesh(1.0, 0.9);
  CHECK(mesh.size() >= 3);
  double sum = 0.0;
  for (double w : mesh.weights) sum += w;
  CHECK(sum == doctest::Approx(kPi).epsilon(5e-3));
}

TEST_CASE("cap_mesh reference size, measure, and lift") {
  const TriMesh mesh = cap_mesh(0.8, 0.12);
  CHECK(mesh.size() >= 240);
  CHECK(mesh.size() <= 340);
  check_mesh_invariants(mesh);
  double sum = 0.0;
  for (double w : mesh.weights) sum += w;
  CHECK(sum == doctest::Approx(kCapMeasure).epsilon(5e-3));
  for (const auto& m : mesh.lifted) {
    CHECK(m.unit_defect() <= 1e-12);
    CHECK(m.mz <= -0.6 + 1e-12);
  }
  CHECK(mesh.mean_edge_length() / 0.12 > 0.8);
  CHECK(mesh.mean_edge_length() / 0.12 < 1.2);
}

TEST_CASE("cap_mesh near-flat limit: weights approach planar areas") {
  const TriMesh cap = cap_mesh_with_count(0.05, 40);
  const TriMesh disk = disk_mesh_with_count(0.05, 40);
  double cap_sum = 0.0, disk_sum = 0.0;
  for (double w : cap.weights) cap_sum += w;
  for (double w : disk.weights) disk_sum += w;
  CHECK(cap_sum == doctest::Approx(disk_sum).epsilon(1e-3));
}

TEST_CASE("Delaunay property holds on generated meshes") {
  for (const TriMesh& mesh : {disk_mesh(17.0 / 9.0, 0.25), cap_mesh(0.8, 0.25)}) {
    for (const auto& t : mesh.triangles) {
      const Vec2 a = mesh.samples[t[0]], b = mesh.samples[t[1]], c = mesh.samples[t[2]];
      for (int p = 0; p < mesh.size(); ++p) {
        if (p == t[0] || p == t[1] || p == t[2]) continue;
        CHECK_FALSE(in_circumcircle(a, b, c, mesh.samples[p], 1e-9));
      }
    }
  }
}

TEST_CASE("pick_anchor moves the nearest sample to slot 0") {
  TriMesh mesh = cap_mesh(0.8, 0.15);
  SUBCASE("existing rim sample") {
    const UnitDirection m1{{0.8, 0.0}, -0.6};
    const int found = pick_anchor(mesh, m1);
    CHECK(found >= 0);
    CHECK(mesh.samples[0].x == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(mesh.samples[0].y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mesh.lifted[0].mz == doctest::Approx(-0.6).epsilon(1e-12));
    CHECK(mesh.on_boundary(0));
    // triangles still reference every sample exactly once in aggregate
    std::set<int> used;
    for (const auto& t : mesh.triangles)
      for (int c = 0; c < 3; ++c) used.insert(t[c]);
    CHECK(static_cast<int>(used.size()) == mesh.size());
  }
  SUBCASE("cap center maps to the innermost sample") {
    const UnitDirection m1{{0.0, 0.0}, -1.0};
    pick_anchor(mesh, m1);
    CHECK(mesh.samples[0].norm() < 0.08);
  }
  SUBCASE("generic rim direction lands within one edge length") {
    const UnitDirection m1 = UnitDirection::from_planar({0.79, 0.1});
    pick_anchor(mesh, m1);
    CHECK((mesh.samples[0] - Vec2{0.79, 0.1}).norm() < 0.15);
  }
}

TEST_CASE("mesh quadrature: edge-midpoint rule with rim segments") {
  // measure itself
  const TriMesh cap = cap_mesh(0.8, 0.08);
  const double meas = integrate_on_cap(cap, [](const UnitDirection&) { return 1.0; });
  CHECK(meas == doctest::Approx(kCapMeasure).epsilon(1e-5));
  const TriMesh disk = disk_mesh(1.5, 0.1);
  const double area = integrate_on_mesh(disk, [](Vec2) { return 1.0; });
  CHECK(area == doctest::Approx(kPi * 2.25).epsilon(1e-5));
}

TEST_CASE("degenerate meshes are rejected") {
  CHECK_THROWS_AS(disk_mesh_with_count(1.0, 2), DegenerateMeshError);
  CHECK_THROWS_AS(disk_mesh(1.0, 1.5), OutOfRangeError);
  CHECK_THROWS_AS(cap_mesh(1.2, 0.1), OutOfRangeError);
}
