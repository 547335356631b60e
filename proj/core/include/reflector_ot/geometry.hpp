#pragma once

#include <cmath>

#include "reflector_ot/errors.hpp"

namespace reflector_ot {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

/// A direction on the unit sphere, stored as the planar projection (mx) plus
/// the axial component mz. The output beam travels toward negative z, so the
/// apertures of interest have mz < 0.
struct UnitDirection {
  Vec2 mx;
  double mz = -1.0;

  /// Lift planar coordinates to the lower hemisphere: mz = -sqrt(1 - |p|^2).
  static UnitDirection from_planar(Vec2 p) {
    const double s2 = p.norm2();
    if (s2 >= 1.0) throw OutOfRangeError("planar projection outside the unit disk");
    return {p, -std::sqrt(1.0 - s2)};
  }

  double unit_defect() const { return std::abs(mx.norm2() + mz * mz - 1.0); }
};

/// A point in the output plane z = -d.
struct PlanePoint {
  Vec2 x;
};

/// The single optical constant of the cost: reduced path length ell = L - d.
struct OpticalConfig {
  double ell = 1.0;
};

inline constexpr double kPoleThreshold = 1e-14;

/// Transport cost coupling a source direction to an output point:
///   K(m,x) = (ell - <mx,x>) / (2 ell (ell^2 - |x|^2)(1 + mz)) - 1/(4 ell^2).
double cost_K(const OpticalConfig& cfg, const UnitDirection& m, const PlanePoint& x);

/// log K; throws NonpositiveCostError when K <= 0.
double log_cost(const OpticalConfig& cfg, const UnitDirection& m, const PlanePoint& x);

/// z-transform of a second-reflector height:  z~ = 1/(2 ell) - z/(ell^2 - |x|^2).
double z_tilde(const OpticalConfig& cfg, double z_value, const PlanePoint& x);

/// rho-transform of a first-reflector radius:  r~ = -1/(2 ell) + 1/(2 rho (mz+1)).
double rho_tilde(const OpticalConfig& cfg, double rho_value, const UnitDirection& m);

/// Algebraic inverses of the two transforms.
double inverse_z_tilde(const OpticalConfig& cfg, double zt, const PlanePoint& x);
double inverse_rho_tilde(const OpticalConfig& cfg, double rt, const UnitDirection& m);

}  // namespace reflector_ot
