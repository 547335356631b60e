#pragma once

#include <span>
#include <vector>

#include "reflector_ot/oracle.hpp"
#include "reflector_ot/problem.hpp"
#include "reflector_ot/refine.hpp"

namespace reflector_ot {

struct DiscreteSolution;
struct IterationReport;

/// Errors of a discrete solution against the closed-form pair. Max norm is
/// the plain maximum over samples; the L2 norm is the mesh-weighted root sum
/// sqrt(sum_i w_i e_i^2), so l2 <= max * sqrt(total measure).
struct ErrorReport {
  double max_err_r1 = 0.0, l2_err_r1 = 0.0;
  double max_err_r2 = 0.0, l2_err_r2 = 0.0;
  std::vector<double> per_sample_r1, per_sample_r2;
};

ErrorReport reflector_errors(const DiscreteSolution& sol, const EllipsoidParaboloidPair& oracle);

/// Least-squares slope of log(error) against log(n_total).
double decay_fit(std::span<const double> errors, std::span<const double> n_tot);

/// Discrete local energy conservation through the ray map: per output cell,
/// the transported input energy minus the prescribed cell energy; relative
/// figures are against the mean cell energy.
struct EnergyReport {
  std::vector<double> imbalance;
  double max_rel = 0.0;
  double mean_rel = 0.0;
};

EnergyReport energy_report(const DiscreteSolution& sol, const ProblemData& data);

struct ConstraintStat {
  int level = 0;
  std::size_t count = 0;
  double pct_of_full = 0.0;
};

std::vector<ConstraintStat> constraint_stats(std::span<const IterationReport> reports);

}  // namespace reflector_ot
