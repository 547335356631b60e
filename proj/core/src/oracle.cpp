#include "reflector_ot/oracle.hpp"

#include <cmath>

#include "reflector_ot/errors.hpp"

namespace reflector_ot {

double rho_exact(const EllipsoidParaboloidPair& pair, const UnitDirection& m) {
  const double R = pair.string_length;
  const double m_dot_a = m.mx.dot(pair.focus_xy) + m.mz * pair.focus_z;
  if (R <= m_dot_a) throw OutOfRangeError("rho_exact: R <= m.a");
  const double a2 = pair.focus_xy.norm2() + pair.focus_z * pair.focus_z;
  return (R * R - a2) / (2.0 * (R - m_dot_a));
}

double z_exact(const EllipsoidParaboloidPair& pair, const PlanePoint& x) {
  const Vec2 p = x.x - pair.focus_xy;
  return pair.focus_z + pair.alpha - p.norm2() / (4.0 * pair.alpha);
}

PlanePoint gamma(const EllipsoidParaboloidPair& pair, const UnitDirection& m) {
  const double rho = rho_exact(pair, m);
  const double den = pair.string_length + pair.focus_z - rho * (1.0 + m.mz);
  if (den <= 1e-12) throw DegenerateRayError("gamma: degenerate ray denominator");
  const double lam = 2.0 * pair.alpha / den;
  return {pair.focus_xy + lam * (pair.focus_xy - rho * m.mx)};
}

double jacobian(const EllipsoidParaboloidPair& pair, Vec2 mxy) {
  const double s2 = mxy.norm2();
  if (s2 >= 1.0) throw OutOfRangeError("jacobian: |mxy| >= 1");
  const double mz = -std::sqrt(1.0 - s2);
  const double R = pair.string_length;
  const double c = pair.focus_z;
  const double a2 = pair.focus_xy.norm2() + c * c;
  const double num = 4.0 * pair.alpha * pair.alpha * (a2 - R * R) * (a2 - R * R);
  const double inner = 2.0 * (c + R) * mxy.dot(pair.focus_xy) -
                       (1.0 + mz) * pair.focus_xy.norm2() - (c + R) * (c + R) * (1.0 - mz);
  return num / (-mz * inner * inner);
}

double input_intensity(const EllipsoidParaboloidPair& pair,
                       const std::function<double(const PlanePoint&)>& L,
                       const UnitDirection& m) {
  return std::abs(m.mz) * L(gamma(pair, m)) * jacobian(pair, m.mx);
}

ProblemData SyntheticDataset::problem() const {
  ProblemData data;
  data.cap_planar_radius = cap_planar_radius;
  data.disk_radius = disk_radius;
  data.optics = optics;
  const double k = intensity_constant;
  data.intensity_in = [k](const UnitDirection& m) {
    const double d = 1.0 - m.mz;
    return k / (d * d);
  };
  data.intensity_out = [](const PlanePoint&) { return 1.0; };
  // rim anchor: the ring contains samples with mz exactly -0.6, and rho is
  // axisymmetric there, so re-anchoring per level is bias-free
  data.anchor_direction = UnitDirection{{cap_planar_radius, 0.0},
                                        -std::sqrt(1.0 - cap_planar_radius * cap_planar_radius)};
  data.anchor_rho = rho_exact(pair, data.anchor_direction);
  return data;
}

SyntheticDataset default_dataset() {
  SyntheticDataset ds;
  ds.pair = EllipsoidParaboloidPair{{0.0, 0.0}, -0.4, 1.3, 1.0};
  ds.cap_planar_radius = 0.8;
  ds.disk_radius = 17.0 / 9.0;
  // total path O -> R1 -> R2 -> plane minus the plane offset:
  // rho + (R - rho + |a P2|) + (z + d) with |a P2| = 2 alpha - (z - c)
  ds.optics = OpticalConfig{ds.pair.string_length + 2.0 * ds.pair.alpha + ds.pair.focus_z};
  ds.intensity_constant = 14.2716049383;  // 4 (17/9)^2 to ten decimals
  return ds;
}

}  // namespace reflector_ot
