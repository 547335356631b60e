#pragma once

#include <functional>
#include <optional>

#include "reflector_ot/geometry.hpp"

namespace reflector_ot {

/// Everything the discretization pipeline needs to know about one design
/// problem: the two apertures, the intensities, the optical constant, and the
/// gauge-fixing anchor rho(m1) = rho1.
struct ProblemData {
  double cap_planar_radius = 0.0;
  double disk_radius = 0.0;
  OpticalConfig optics;
  std::function<double(const UnitDirection&)> intensity_in;
  std::function<double(const PlanePoint&)> intensity_out;
  UnitDirection anchor_direction;
  double anchor_rho = 1.0;
};

}  // namespace reflector_ot
