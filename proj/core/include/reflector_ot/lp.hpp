#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reflector_ot/geometry.hpp"
#include "reflector_ot/mesh.hpp"

namespace reflector_ot {

/// The discretized dual LP:
///   minimize  sum_i r_i W_i + sum_j z_j V_j
///   s.t.      r_i + z_j >= rhs_ij  for every listed constraint,
///             r_anchor = anchor_value,
/// with W_i = I(m_i) w_i and V_j = L(x_j) w_j rescaled so the two weight
/// sums balance exactly.
struct DualLP {
  struct Constraint {
    int i;
    int j;
    double rhs;  ///< log K(m_i, x_j)
  };

  std::vector<double> r_weights;
  std::vector<double> z_weights;
  std::vector<Constraint> constraints;
  int anchor_index = 0;
  double anchor_value = 0.0;

  int rows() const { return static_cast<int>(r_weights.size()); }
  int cols() const { return static_cast<int>(z_weights.size()); }
};

struct ActiveConstraint {
  int i;
  int j;
  double slack;
};

struct UnboundedWitness {
  std::vector<int> rows;  ///< input samples with unmet mass (or no coverage)
  std::vector<int> cols;
  std::vector<double> ray_r, ray_z;  ///< feasible descent direction, when known
};

struct LPOutcome {
  enum class Status { Optimal, Unbounded, Infeasible };
  Status status = Status::Optimal;
  std::vector<double> r, z;
  double objective = 0.0;
  std::vector<ActiveConstraint> active;  ///< at the default activity tolerance
  std::optional<UnboundedWitness> witness;
  long pivots = 0;
};

inline constexpr double kDefaultFeasTol = 1e-9;
inline constexpr double kDefaultOptTol = 1e-9;
inline constexpr double kDefaultActTol = 1e-7;

/// Assemble the LP from the two meshes and intensities. When `subset` is
/// empty-optional the full rows x cols product is used. z-weights are scaled
/// by (sum r_weights / sum raw z_weights); rhs values are computed with
/// log_cost (NonpositiveCostError aborts assembly).
DualLP assemble(const TriMesh& cap, const TriMesh& disk,
                const std::function<double(const UnitDirection&)>& I,
                const std::function<double(const PlanePoint&)>& L, const OpticalConfig& cfg,
                std::optional<std::span<const std::pair<int, int>>> subset, double anchor_value);

struct CoverageReport {
  bool covered = true;
  std::vector<int> uncovered_rows, uncovered_cols;
};

/// Every index absent from the constraint list makes the LP unbounded
/// (positive objective weight, no lower bound), so the solve is skipped.
CoverageReport coverage_check(const DualLP& lp);

/// Solve to optimality (or detect unboundedness) deterministically.
LPOutcome solve(const DualLP& lp, double feas_tol = kDefaultFeasTol,
                double opt_tol = kDefaultOptTol);

/// All constraints with slack r_i + z_j - rhs <= act_tol, in row-major order.
std::vector<ActiveConstraint> active_constraints(const DualLP& lp, const LPOutcome& outcome,
                                                 double act_tol = kDefaultActTol);

struct RayMap {
  std::vector<int> target;      ///< i -> j*
  int multivalued_count = 0;    ///< rows with more than one active pair
};

/// Discrete ray-tracing map from the active set: per row the smallest-slack
/// pair, ties to the smallest j. Throws MissingRowError when a row has none.
RayMap ray_map_from_active(std::span<const ActiveConstraint> active, int n_rows);

/// Objective value of an arbitrary (r, z) under the LP's weights.
double lp_objective(const DualLP& lp, std::span<const double> r, std::span<const double> z);

/// Text dump in LP interchange format, 12 significant digits.
std::string dump_lp_format(const DualLP& lp);

}  // namespace reflector_ot
