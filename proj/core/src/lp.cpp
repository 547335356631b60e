#include "reflector_ot/lp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "reflector_ot/errors.hpp"
#include "reflector_ot/network_simplex.hpp"
#include "reflector_ot/parallel.hpp"

namespace reflector_ot {

namespace {

std::string format_g12(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

}  // namespace

DualLP assemble(const TriMesh& cap, const TriMesh& disk,
                const std::function<double(const UnitDirection&)>& I,
                const std::function<double(const PlanePoint&)>& L, const OpticalConfig& cfg,
                std::optional<std::span<const std::pair<int, int>>> subset, double anchor_value) {
  const int M = cap.size(), N = disk.size();
  DualLP lp;
  lp.anchor_index = 0;
  lp.anchor_value = anchor_value;

  lp.r_weights.resize(M);
  double r_sum = 0.0;
  for (int i = 0; i < M; ++i) {
    lp.r_weights[i] = I(cap.lifted[i]) * cap.weights[i];
    if (!(lp.r_weights[i] > 0.0))
      throw OutOfRangeError("assemble: nonpositive input-intensity weight");
    r_sum += lp.r_weights[i];
  }
  lp.z_weights.resize(N);
  double z_sum = 0.0;
  for (int j = 0; j < N; ++j) {
    lp.z_weights[j] = L(PlanePoint{disk.samples[j]}) * disk.weights[j];
    if (!(lp.z_weights[j] > 0.0))
      throw OutOfRangeError("assemble: nonpositive output-intensity weight");
    z_sum += lp.z_weights[j];
  }
  // mass balancing, then absorb the rounding residual into the largest entry
  // so both sums agree bit-for-bit
  const double scale = r_sum / z_sum;
  double scaled_sum = 0.0;
  for (double& v : lp.z_weights) {
    v *= scale;
    scaled_sum += v;
  }
  const auto largest = std::max_element(lp.z_weights.begin(), lp.z_weights.end());
  *largest += r_sum - scaled_sum;

  if (subset.has_value()) {
    const auto pairs = *subset;
    if (pairs.empty()) throw EmptySubsetError("assemble: constraint subset is empty");
    for (const auto& [i, j] : pairs)
      if (i < 0 || i >= M || j < 0 || j >= N)
        throw OutOfRangeError("assemble: constraint pair outside the meshes");
    lp.constraints.resize(pairs.size());
    parallel_for(0, pairs.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t c = lo; c < hi; ++c) {
        const auto [i, j] = pairs[c];
        lp.constraints[c] = {i, j,
                             log_cost(cfg, cap.lifted[i], PlanePoint{disk.samples[j]})};
      }
    });
  } else {
    lp.constraints.resize(static_cast<std::size_t>(M) * N);
    parallel_for(0, static_cast<std::size_t>(M), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        for (int j = 0; j < N; ++j)
          lp.constraints[i * N + j] = {static_cast<int>(i), j,
                                       log_cost(cfg, cap.lifted[i], PlanePoint{disk.samples[j]})};
    });
  }
  return lp;
}

CoverageReport coverage_check(const DualLP& lp) {
  CoverageReport rep;
  std::vector<char> row_seen(lp.rows(), 0), col_seen(lp.cols(), 0);
  for (const auto& c : lp.constraints) {
    row_seen[c.i] = 1;
    col_seen[c.j] = 1;
  }
  for (int i = 0; i < lp.rows(); ++i)
    if (!row_seen[i]) rep.uncovered_rows.push_back(i);
  for (int j = 0; j < lp.cols(); ++j)
    if (!col_seen[j]) rep.uncovered_cols.push_back(j);
  rep.covered = rep.uncovered_rows.empty() && rep.uncovered_cols.empty();
  return rep;
}

LPOutcome solve(const DualLP& lp, double feas_tol, double opt_tol) {
  std::vector<TransportArc> arcs(lp.constraints.size());
  for (std::size_t c = 0; c < lp.constraints.size(); ++c)
    arcs[c] = {lp.constraints[c].i, lp.constraints[c].j, lp.constraints[c].rhs};

  const TransportResult res =
      solve_transport(lp.rows(), lp.cols(), lp.r_weights, lp.z_weights, arcs, lp.anchor_index,
                      lp.anchor_value, opt_tol, feas_tol);

  LPOutcome out;
  out.pivots = res.pivots;
  if (res.status == TransportResult::Status::Infeasible) {
    out.status = LPOutcome::Status::Unbounded;
    UnboundedWitness w;
    w.rows = res.deficient_rows;
    w.cols = res.deficient_cols;
    w.ray_r = res.ray_r;
    w.ray_z = res.ray_z;
    out.witness = std::move(w);
    return out;
  }
  out.status = LPOutcome::Status::Optimal;
  out.r = res.r;
  out.z = res.z;
  out.objective = res.dual_objective;
  out.active = active_constraints(lp, out, kDefaultActTol);
  return out;
}

std::vector<ActiveConstraint> active_constraints(const DualLP& lp, const LPOutcome& outcome,
                                                 double act_tol) {
  std::vector<ActiveConstraint> act;
  for (const auto& c : lp.constraints) {
    const double slack = outcome.r[c.i] + outcome.z[c.j] - c.rhs;
    if (slack <= act_tol) act.push_back({c.i, c.j, slack});
  }
  std::sort(act.begin(), act.end(), [](const ActiveConstraint& a, const ActiveConstraint& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return act;
}

RayMap ray_map_from_active(std::span<const ActiveConstraint> active, int n_rows) {
  RayMap map;
  map.target.assign(n_rows, -1);
  std::vector<double> best(n_rows, std::numeric_limits<double>::infinity());
  std::vector<int> count(n_rows, 0);
  for (const auto& a : active) {
    ++count[a.i];
    if (a.slack < best[a.i] || (a.slack == best[a.i] && a.j < map.target[a.i])) {
      best[a.i] = a.slack;
      map.target[a.i] = a.j;
    }
  }
  for (int i = 0; i < n_rows; ++i) {
    if (map.target[i] < 0)
      throw MissingRowError("ray_map_from_active: row " + std::to_string(i) +
                            " has no active pair (act_tol too small?)");
    if (count[i] > 1) ++map.multivalued_count;
  }
  return map;
}

double lp_objective(const DualLP& lp, std::span<const double> r, std::span<const double> z) {
  double obj = 0.0;
  for (int i = 0; i < lp.rows(); ++i) obj += lp.r_weights[i] * r[i];
  for (int j = 0; j < lp.cols(); ++j) obj += lp.z_weights[j] * z[j];
  return obj;
}

std::string dump_lp_format(const DualLP& lp) {
  std::string s;
  s.reserve(64 * lp.constraints.size() + 32 * (lp.rows() + lp.cols()));
  s += "\\ dual reflector LP: minimize weighted potentials subject to\n";
  s += "\\ r_i + z_j >= log K(m_i, x_j); anchor fixed by a bound\n";
  s += "Minimize\n obj:";
  for (int i = 0; i < lp.rows(); ++i) {
    s += (i == 0 ? " " : " + ");
    s += format_g12(lp.r_weights[i]);
    s += " r" + std::to_string(i);
  }
  for (int j = 0; j < lp.cols(); ++j) {
    s += " + ";
    s += format_g12(lp.z_weights[j]);
    s += " z" + std::to_string(j);
  }
  s += "\nSubject To\n";
  std::size_t idx = 0;
  for (const auto& c : lp.constraints) {
    s += " c" + std::to_string(idx++) + ": r" + std::to_string(c.i) + " + z" +
         std::to_string(c.j) + " >= " + format_g12(c.rhs) + "\n";
  }
  s += "Bounds\n";
  for (int i = 0; i < lp.rows(); ++i) {
    if (i == lp.anchor_index)
      s += " r" + std::to_string(i) + " = " + format_g12(lp.anchor_value) + "\n";
    else
      s += " r" + std::to_string(i) + " free\n";
  }
  for (int j = 0; j < lp.cols(); ++j) s += " z" + std::to_string(j) + " free\n";
  s += "End\n";
  return s;
}

}  // namespace reflector_ot
