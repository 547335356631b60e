#pragma once

#include <stdexcept>
#include <string>

namespace reflector_ot {

/// Base class for every error this library throws deliberately.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Evaluation too close to the sphere pole mz = -1 (1 + mz below threshold).
class PoleSingularityError : public Error {
public:
  using Error::Error;
};

/// A plane point outside the valid domain |x| < ell, or a value outside an
/// operation's admissible range.
class OutOfRangeError : public Error {
public:
  using Error::Error;
};

/// The cost K evaluated to a nonpositive value; log K is undefined and the
/// dataset violates the LP's implicit domain. Assembly must abort.
class NonpositiveCostError : public Error {
public:
  using Error::Error;
};

/// A reflector radius that must be positive was not.
class NonpositiveRadiusError : public Error {
public:
  using Error::Error;
};

/// Triangulation failed (too few points, all collinear, ...).
class DegenerateMeshError : public Error {
public:
  using Error::Error;
};

/// A constraint subset with no pairs was handed to the assembler.
class EmptySubsetError : public Error {
public:
  using Error::Error;
};

/// The LP solver lost numerical consistency (failed final verification).
class NumericalFailureError : public Error {
public:
  using Error::Error;
};

/// ray_map_from_active found an input sample with no active pair.
class MissingRowError : public Error {
public:
  using Error::Error;
};

/// The bisection bracket endpoints do not straddle the coverage transition.
class BadBracketError : public Error {
public:
  using Error::Error;
};

/// Fewer data points than a fit requires.
class InsufficientDataError : public Error {
public:
  using Error::Error;
};

/// The selected-constraint count exceeded the configured memory cap.
class MemoryCapError : public Error {
public:
  using Error::Error;
};

/// A ray-tracing denominator collapsed; the ray does not reach the plane.
class DegenerateRayError : public Error {
public:
  using Error::Error;
};

}  // namespace reflector_ot
