#pragma once

#include <span>
#include <vector>

namespace reflector_ot {

/// One admissible coupling arc of the transportation problem, with its gain
/// (the LP right-hand side log K for the pair it represents).
struct TransportArc {
  int row;
  int col;
  double gain;
};

/// Result of the transportation solve. `Optimal` carries the dual potentials
/// (r, z) satisfying r_i + z_j >= gain_ij on every arc with the anchor row
/// pinned exactly; `Infeasible` means the primal transportation problem has
/// no feasible plan on the given support, i.e. the potential-minimization
/// problem is unbounded, and carries a certificate ray.
struct TransportResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Optimal;
  std::vector<double> r, z;
  double primal_objective = 0.0;  ///< sum of gain * flow
  double dual_objective = 0.0;    ///< sum w r + sum v z
  std::vector<double> flow;       ///< optimal plan, per input arc
  std::vector<int> deficient_rows, deficient_cols;  ///< leftover artificial mass
  std::vector<double> ray_r, ray_z;  ///< unbounded direction for the dual
  long pivots = 0;
};

/// Maximize sum gain_ij f_ij over f >= 0 with row sums `row_mass` and column
/// sums `col_mass` (which must balance exactly), restricted to the sparse
/// support `arcs`. Network simplex with a root node; artificial arcs carry
/// exact two-component big-M costs, so infeasibility detection and the dual
/// ray are exact rather than threshold-against-a-large-number. Dantzig block
/// pricing with a Bland's-rule fallback after a degeneracy stall guarantees
/// termination. Deterministic for identical input.
TransportResult solve_transport(int n_rows, int n_cols, std::span<const double> row_mass,
                                std::span<const double> col_mass,
                                std::span<const TransportArc> arcs, int anchor_row,
                                double anchor_value, double opt_tol = 1e-9,
                                double feas_tol = 1e-9);

}  // namespace reflector_ot
