#include "reflector_ot/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "reflector_ot/errors.hpp"

namespace reflector_ot {

ErrorReport reflector_errors(const DiscreteSolution& sol, const EllipsoidParaboloidPair& oracle) {
  ErrorReport rep;
  rep.per_sample_r1.resize(sol.rho.size());
  double l2 = 0.0;
  for (std::size_t i = 0; i < sol.rho.size(); ++i) {
    const double e = std::abs(sol.rho[i] - rho_exact(oracle, sol.cap.lifted[i]));
    rep.per_sample_r1[i] = e;
    rep.max_err_r1 = std::max(rep.max_err_r1, e);
    l2 += sol.cap.weights[i] * e * e;
  }
  rep.l2_err_r1 = std::sqrt(l2);
  rep.per_sample_r2.resize(sol.zsurf.size());
  l2 = 0.0;
  for (std::size_t j = 0; j < sol.zsurf.size(); ++j) {
    const double e = std::abs(sol.zsurf[j] - z_exact(oracle, PlanePoint{sol.disk.samples[j]}));
    rep.per_sample_r2[j] = e;
    rep.max_err_r2 = std::max(rep.max_err_r2, e);
    l2 += sol.disk.weights[j] * e * e;
  }
  rep.l2_err_r2 = std::sqrt(l2);
  return rep;
}

double decay_fit(std::span<const double> errors, std::span<const double> n_tot) {
  if (errors.size() != n_tot.size() || errors.size() < 3)
    throw InsufficientDataError("decay_fit: need at least 3 levels");
  const std::size_t n = errors.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(errors[k] > 0.0) || !(n_tot[k] > 0.0))
      throw OutOfRangeError("decay_fit: nonpositive error or size");
    const double x = std::log(n_tot[k]), y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InsufficientDataError("decay_fit: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

EnergyReport energy_report(const DiscreteSolution& sol, const ProblemData& data) {
  EnergyReport rep;
  const int N = sol.disk.size();
  // reproduce the assembled, mass-balanced weights
  std::vector<double> in_w(sol.cap.size()), out_w(N);
  double in_sum = 0.0, out_sum = 0.0;
  for (int i = 0; i < sol.cap.size(); ++i) {
    in_w[i] = data.intensity_in(sol.cap.lifted[i]) * sol.cap.weights[i];
    in_sum += in_w[i];
  }
  for (int j = 0; j < N; ++j) {
    out_w[j] = data.intensity_out(PlanePoint{sol.disk.samples[j]}) * sol.disk.weights[j];
    out_sum += out_w[j];
  }
  const double scale = in_sum / out_sum;
  for (double& v : out_w) v *= scale;

  rep.imbalance.assign(N, 0.0);
  for (int i = 0; i < sol.cap.size(); ++i) rep.imbalance[sol.ray_map.target[i]] += in_w[i];
  for (int j = 0; j < N; ++j) rep.imbalance[j] -= out_w[j];

  const double mean_cell = in_sum / N;
  double acc = 0.0;
  for (double v : rep.imbalance) {
    rep.max_rel = std::max(rep.max_rel, std::abs(v) / mean_cell);
    acc += std::abs(v) / mean_cell;
  }
  rep.mean_rel = acc / N;
  return rep;
}

std::vector<ConstraintStat> constraint_stats(std::span<const IterationReport> reports) {
  std::vector<ConstraintStat> stats;
  stats.reserve(reports.size());
  for (const auto& r : reports) {
    if (r.status != "optimal") continue;
    stats.push_back({r.level, r.constraints, r.pct_full});
  }
  return stats;
}

}  // namespace reflector_ot
