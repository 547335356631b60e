#pragma once

#include <functional>

#include "reflector_ot/geometry.hpp"
#include "reflector_ot/problem.hpp"

namespace reflector_ot {

/// Closed-form reflector pair: the first reflector bounds a spheroid with
/// foci at the origin and `focus`, string length R; the second bounds a
/// paraboloid with focus `focus`, half focal parameter `alpha`, opening
/// along the negative z-axis. A ray leaving the origin reflects to the
/// second focus and then into a vertical ray.
struct EllipsoidParaboloidPair {
  Vec2 focus_xy;        ///< (a, b)
  double focus_z = 0.0; ///< c
  double string_length = 1.0;  ///< R > |focus|
  double alpha = 1.0;          ///< > 0
};

/// Radial graph of the first reflector: rho(m) = (R^2 - |a|^2) / (2 (R - m.a)).
double rho_exact(const EllipsoidParaboloidPair& pair, const UnitDirection& m);

/// Height graph of the second reflector: z = c + alpha - |x - (a,b)|^2 / (4 alpha).
double z_exact(const EllipsoidParaboloidPair& pair, const PlanePoint& x);

/// Ray-tracing map: output-plane landing point of the twice-reflected ray.
PlanePoint gamma(const EllipsoidParaboloidPair& pair, const UnitDirection& m);

/// Jacobian of gamma composed with the planar chart tau(mx,my); closed form.
double jacobian(const EllipsoidParaboloidPair& pair, Vec2 mxy);

/// Input intensity induced by an output intensity L through the pair:
/// I(m) = |mz| L(gamma(m)) J(gamma o tau).
double input_intensity(const EllipsoidParaboloidPair& pair,
                       const std::function<double(const PlanePoint&)>& L,
                       const UnitDirection& m);

/// The concrete synthetic dataset: a=b=0, c=-0.4, alpha=1, R=1.3, cap planar
/// radius 0.8, disk radius 17/9, ell = R + 2 alpha = 2.9, L = 1, and the
/// closed-form I(m) = 14.2716049383 / (1 - mz)^2.
struct SyntheticDataset {
  EllipsoidParaboloidPair pair;
  double cap_planar_radius = 0.0;
  double disk_radius = 0.0;
  OpticalConfig optics;
  double intensity_constant = 0.0;

  double I(const UnitDirection& m) const {
    const double d = 1.0 - m.mz;
    return intensity_constant / (d * d);
  }
  double L(const PlanePoint&) const { return 1.0; }

  /// Package as the generic problem description the solver pipeline consumes.
  ProblemData problem() const;
};

SyntheticDataset default_dataset();

}  // namespace reflector_ot
