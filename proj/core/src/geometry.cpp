#include "reflector_ot/geometry.hpp"

#include <cmath>

namespace reflector_ot {

double cost_K(const OpticalConfig& cfg, const UnitDirection& m, const PlanePoint& x) {
  const double ell = cfg.ell;
  const double one_plus_mz = 1.0 + m.mz;
  if (one_plus_mz <= kPoleThreshold)
    throw PoleSingularityError("cost_K: direction at or below the pole threshold");
  const double x2 = x.x.norm2();
  const double ell2 = ell * ell;
  if (x2 >= ell2) throw OutOfRangeError("cost_K: |x| >= ell");
  return (ell - m.mx.dot(x.x)) / (2.0 * ell * (ell2 - x2) * one_plus_mz) - 1.0 / (4.0 * ell2);
}

double log_cost(const OpticalConfig& cfg, const UnitDirection& m, const PlanePoint& x) {
  const double k = cost_K(cfg, m, x);
  if (k <= 0.0) throw NonpositiveCostError("log_cost: K <= 0, dataset outside the LP domain");
  return std::log(k);
}

double z_tilde(const OpticalConfig& cfg, double z_value, const PlanePoint& x) {
  const double ell = cfg.ell;
  const double x2 = x.x.norm2();
  if (x2 >= ell * ell) throw OutOfRangeError("z_tilde: |x| >= ell");
  return 1.0 / (2.0 * ell) - z_value / (ell * ell - x2);
}

double rho_tilde(const OpticalConfig& cfg, double rho_value, const UnitDirection& m) {
  if (rho_value <= 0.0) throw NonpositiveRadiusError("rho_tilde: rho <= 0");
  const double one_plus_mz = m.mz + 1.0;
  if (one_plus_mz <= kPoleThreshold)
    throw PoleSingularityError("rho_tilde: direction at or below the pole threshold");
  return -1.0 / (2.0 * cfg.ell) + 1.0 / (2.0 * rho_value * one_plus_mz);
}

double inverse_z_tilde(const OpticalConfig& cfg, double zt, const PlanePoint& x) {
  const double ell = cfg.ell;
  const double x2 = x.x.norm2();
  if (x2 >= ell * ell) throw OutOfRangeError("inverse_z_tilde: |x| >= ell");
  return (1.0 / (2.0 * ell) - zt) * (ell * ell - x2);
}

double inverse_rho_tilde(const OpticalConfig& cfg, double rt, const UnitDirection& m) {
  const double one_plus_mz = m.mz + 1.0;
  if (one_plus_mz <= kPoleThreshold)
    throw PoleSingularityError("inverse_rho_tilde: direction at or below the pole threshold");
  const double shifted = rt + 1.0 / (2.0 * cfg.ell);
  if (shifted <= 0.0)
    throw OutOfRangeError("inverse_rho_tilde: rt <= -1/(2 ell), recovered rho not positive");
  return 1.0 / (2.0 * one_plus_mz * shifted);
}

}  // namespace reflector_ot
