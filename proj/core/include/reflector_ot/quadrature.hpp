#pragma once

#include <functional>

#include "reflector_ot/mesh.hpp"

namespace reflector_ot {

/// Integrate f over the mesh's aperture: per-triangle edge-midpoint rule
/// (exact for quadratics) plus exact circular-segment corrections on rim
/// edges. For cap meshes the integral is with respect to the spherical
/// measure (integrand evaluated at lifted midpoints, metric factor 1/|mz|).
///
/// For a disk mesh `f` receives the plane point with mz = 0 in the direction
/// argument slot unused; use the planar overloads below instead.
double integrate_on_mesh(const TriMesh& mesh, const std::function<double(Vec2)>& f_planar);

/// Cap overload: integrand of the lifted direction, d-sigma measure.
double integrate_on_cap(const TriMesh& mesh, const std::function<double(const UnitDirection&)>& f);

/// 64-point Gauss-Legendre integral of f over [a, b].
double gauss_legendre(double a, double b, const std::function<double(double)>& f);

}  // namespace reflector_ot
