#include "reflector_ot/refine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>

#include "reflector_ot/analysis.hpp"
#include "reflector_ot/errors.hpp"
#include "reflector_ot/interpolate.hpp"
#include "reflector_ot/parallel.hpp"

namespace reflector_ot {

namespace {

struct LevelMeshes {
  TriMesh cap;
  TriMesh disk;
  double anchor_value = 0.0;
};

LevelMeshes make_level_meshes(const ProblemData& data, double h) {
  LevelMeshes lm;
  lm.cap = cap_mesh(data.cap_planar_radius, h);
  lm.disk = disk_mesh(data.disk_radius, h);
  pick_anchor(lm.cap, data.anchor_direction);
  // data item 4 re-applied at this level's actual anchor sample
  lm.anchor_value = std::log(rho_tilde(data.optics, data.anchor_rho, lm.cap.lifted[0]));
  return lm;
}

DiscreteSolution finish_solution(int level, double h, LevelMeshes&& lm, const DualLP& lp,
                                 LPOutcome&& outcome, const ProblemData& data,
                                 const RefinementConfig& config) {
  DiscreteSolution sol;
  sol.level = level;
  sol.h = h;
  sol.cap = std::move(lm.cap);
  sol.disk = std::move(lm.disk);
  sol.constraint_count = lp.constraints.size();
  sol.objective = outcome.objective;
  const auto active = active_constraints(lp, outcome, config.act_tol);
  sol.ray_map = ray_map_from_active(active, lp.rows());
  sol.r = std::move(outcome.r);
  sol.z = std::move(outcome.z);
  sol.rho.resize(sol.r.size());
  for (std::size_t i = 0; i < sol.r.size(); ++i)
    sol.rho[i] = inverse_rho_tilde(data.optics, std::exp(sol.r[i]), sol.cap.lifted[i]);
  sol.zsurf.resize(sol.z.size());
  for (std::size_t j = 0; j < sol.z.size(); ++j)
    sol.zsurf[j] =
        inverse_z_tilde(data.optics, std::exp(sol.z[j]), PlanePoint{sol.disk.samples[j]});
  return sol;
}

/// Transformed interpolants of the previous solution at the fine samples:
/// the smooth surfaces rho / z are interpolated piecewise-linearly and mapped
/// through the transforms, which keeps the near-pole values exact in mz and
/// reproduces the nodal r, z.
struct TransformedGuess {
  std::vector<double> r_hat, z_hat;
};

TransformedGuess interpolate_transformed(const DiscreteSolution& prev, const LevelMeshes& lm,
                                         const ProblemData& data) {
  TransformedGuess g;
  const PlanarInterpolant rho_int(prev.cap, prev.rho);
  const PlanarInterpolant zs_int(prev.disk, prev.zsurf);
  g.r_hat.resize(lm.cap.size());
  for (int i = 0; i < lm.cap.size(); ++i) {
    const double rho_hat = rho_int(lm.cap.samples[i]);
    if (!(rho_hat > 0.0))
      throw NumericalFailureError("refine: interpolated first-reflector radius not positive");
    g.r_hat[i] = std::log(rho_tilde(data.optics, rho_hat, lm.cap.lifted[i]));
  }
  g.z_hat.resize(lm.disk.size());
  for (int j = 0; j < lm.disk.size(); ++j) {
    const double zt = z_tilde(data.optics, zs_int(lm.disk.samples[j]),
                              PlanePoint{lm.disk.samples[j]});
    if (!(zt > 0.0))
      throw NumericalFailureError("refine: interpolated second-reflector transform not positive");
    g.z_hat[j] = std::log(zt);
  }
  return g;
}

/// Per-row and per-column minima of the slack field, for coverage bisection.
struct MinSlacks {
  std::vector<double> row_min, col_min;
};

MinSlacks min_slacks(std::span<const double> r_hat, std::span<const double> z_hat,
                     const TriMesh& cap, const TriMesh& disk, const OpticalConfig& cfg) {
  const int M = cap.size(), N = disk.size();
  MinSlacks ms;
  ms.row_min.assign(M, std::numeric_limits<double>::infinity());
  ms.col_min.assign(N, std::numeric_limits<double>::infinity());
  std::mutex merge_mutex;
  parallel_for(0, static_cast<std::size_t>(M), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> local_col(N, std::numeric_limits<double>::infinity());
    for (std::size_t i = lo; i < hi; ++i) {
      double row_best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < N; ++j) {
        const double slack =
            r_hat[i] + z_hat[j] - log_cost(cfg, cap.lifted[i], PlanePoint{disk.samples[j]});
        row_best = std::min(row_best, slack);
        local_col[j] = std::min(local_col[j], slack);
      }
      ms.row_min[i] = row_best;
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (int j = 0; j < N; ++j) ms.col_min[j] = std::min(ms.col_min[j], local_col[j]);
  });
  return ms;
}

bool covered_at(const MinSlacks& ms, double eps) {
  for (double v : ms.row_min)
    if (!(v < eps)) return false;
  for (double v : ms.col_min)
    if (!(v < eps)) return false;
  return true;
}

}  // namespace

RefinementConfig RefinementConfig::geometric(double h0, double ratio, int n_levels) {
  if (h0 <= 0.0 || ratio <= 0.0 || ratio >= 1.0 || n_levels < 1)
    throw OutOfRangeError("RefinementConfig::geometric: invalid schedule");
  RefinementConfig cfg;
  cfg.h_sequence.resize(n_levels);
  double h = h0;
  for (int k = 0; k < n_levels; ++k, h *= ratio) cfg.h_sequence[k] = h;
  return cfg;
}

double epsilon_schedule(double C, double a, double h_k) {
  if (C <= 0.0 || h_k <= 0.0) throw OutOfRangeError("epsilon_schedule: nonpositive input");
  return C * std::pow(h_k, a);
}

namespace {

void maybe_dump_lp(const DualLP& lp, const RefinementConfig& config, int level) {
  if (!config.lp_dump_dir) return;
  std::filesystem::create_directories(*config.lp_dump_dir);
  std::ofstream out(*config.lp_dump_dir / ("level_" + std::to_string(level) + ".lp"));
  out << dump_lp_format(lp);
}

}  // namespace

DiscreteSolution solve_simple(const ProblemData& data, double h0,
                              const RefinementConfig& config) {
  LevelMeshes lm = make_level_meshes(data, h0);
  const std::size_t full = static_cast<std::size_t>(lm.cap.size()) * lm.disk.size();
  if (full > config.max_constraints)
    throw MemoryCapError("solve_simple: full product exceeds the constraint cap");
  DualLP lp = assemble(lm.cap, lm.disk, data.intensity_in, data.intensity_out, data.optics,
                       std::nullopt, lm.anchor_value);
  maybe_dump_lp(lp, config, 1);
  LPOutcome outcome = solve(lp, config.feas_tol, config.opt_tol);
  if (outcome.status != LPOutcome::Status::Optimal)
    throw NumericalFailureError(
        "solve_simple: full-product LP not optimal (positive weights make this impossible)");
  return finish_solution(1, h0, std::move(lm), lp, std::move(outcome), data, config);
}

std::vector<double> interpolate_r(const DiscreteSolution& sol,
                                  std::span<const UnitDirection> query_dirs) {
  const PlanarInterpolant interp(sol.cap, sol.r);
  std::vector<Vec2> q(query_dirs.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = query_dirs[k].mx;
  return interp.evaluate(q);
}

std::vector<double> interpolate_z(const DiscreteSolution& sol,
                                  std::span<const PlanePoint> query_pts) {
  const PlanarInterpolant interp(sol.disk, sol.z);
  std::vector<Vec2> q(query_pts.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = query_pts[k].x;
  return interp.evaluate(q);
}

std::vector<std::pair<int, int>> select_constraints(std::span<const double> r_hat,
                                                    std::span<const double> z_hat,
                                                    const TriMesh& fine_cap,
                                                    const TriMesh& fine_disk,
                                                    const OpticalConfig& cfg, double eps,
                                                    std::size_t max_constraints) {
  if (!(eps > 0.0)) throw OutOfRangeError("select_constraints: eps must be positive");
  const int M = fine_cap.size(), N = fine_disk.size();
  std::vector<std::vector<std::pair<int, int>>> chunks;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::mutex chunk_mutex;
  parallel_for(0, static_cast<std::size_t>(M), [&](std::size_t lo, std::size_t hi) {
    std::vector<std::pair<int, int>> local;
    for (std::size_t i = lo; i < hi; ++i)
      for (int j = 0; j < N; ++j) {
        const double slack =
            r_hat[i] + z_hat[j] - log_cost(cfg, fine_cap.lifted[i], PlanePoint{fine_disk.samples[j]});
        if (slack < eps) local.emplace_back(static_cast<int>(i), j);
      }
    std::lock_guard<std::mutex> lock(chunk_mutex);
    ranges.emplace_back(lo, chunks.size());
    chunks.push_back(std::move(local));
  });
  // deterministic row-major concatenation regardless of thread interleaving
  std::sort(ranges.begin(), ranges.end());
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  if (total > max_constraints)
    throw MemoryCapError("select_constraints: " + std::to_string(total) +
                         " pairs exceed the cap of " + std::to_string(max_constraints));
  std::vector<std::pair<int, int>> out;
  out.reserve(total);
  for (const auto& [lo, idx] : ranges)
    out.insert(out.end(), chunks[idx].begin(), chunks[idx].end());
  return out;
}

std::variant<DiscreteSolution, UnboundedReport> refine_once(const DiscreteSolution& prev,
                                                            double h_next, double eps,
                                                            const ProblemData& data,
                                                            const RefinementConfig& config) {
  if (!(h_next < prev.h))
    throw OutOfRangeError("refine_once: h_next must be finer than the previous level");
  LevelMeshes lm = make_level_meshes(data, h_next);
  const TransformedGuess guess = interpolate_transformed(prev, lm, data);
  const auto pairs = select_constraints(guess.r_hat, guess.z_hat, lm.cap, lm.disk, data.optics,
                                        eps, config.max_constraints);

  // coverage before assembling: an uncovered index already proves the LP
  // unbounded (positive weights, lower-bounding constraints only)
  std::vector<char> row_seen(lm.cap.size(), 0), col_seen(lm.disk.size(), 0);
  for (const auto& [i, j] : pairs) {
    row_seen[i] = 1;
    col_seen[j] = 1;
  }
  UnboundedReport ub;
  ub.level = prev.level + 1;
  ub.h = h_next;
  ub.epsilon = eps;
  ub.M = lm.cap.size();
  ub.N = lm.disk.size();
  for (int i = 0; i < lm.cap.size(); ++i)
    if (!row_seen[i]) ub.uncovered_rows.push_back(i);
  for (int j = 0; j < lm.disk.size(); ++j)
    if (!col_seen[j]) ub.uncovered_cols.push_back(j);
  if (!ub.uncovered_rows.empty() || !ub.uncovered_cols.empty()) return ub;

  DualLP lp = assemble(lm.cap, lm.disk, data.intensity_in, data.intensity_out, data.optics,
                       std::span<const std::pair<int, int>>(pairs), lm.anchor_value);
  maybe_dump_lp(lp, config, prev.level + 1);
  LPOutcome outcome = solve(lp, config.feas_tol, config.opt_tol);
  if (outcome.status == LPOutcome::Status::Unbounded) {
    // covered but primal-infeasible support (Hall violation); the solver's
    // witness lists the deficient indices
    if (outcome.witness) {
      ub.uncovered_rows = outcome.witness->rows;
      ub.uncovered_cols = outcome.witness->cols;
    }
    return ub;
  }
  return finish_solution(prev.level + 1, h_next, std::move(lm), lp, std::move(outcome), data,
                         config);
}

double find_critical_epsilon(const DiscreteSolution& prev, double h_next, const ProblemData& data,
                             const RefinementConfig& /*config*/,
                             std::pair<double, double> bracket, int iters) {
  LevelMeshes lm = make_level_meshes(data, h_next);
  const TransformedGuess guess = interpolate_transformed(prev, lm, data);
  const MinSlacks ms = min_slacks(guess.r_hat, guess.z_hat, lm.cap, lm.disk, data.optics);
  auto [lo, hi] = bracket;
  if (covered_at(ms, lo) || !covered_at(ms, hi))
    throw BadBracketError("find_critical_epsilon: bracket does not straddle the transition");
  for (int it = 0; it < iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    (covered_at(ms, mid) ? hi : lo) = mid;
  }
  return hi;
}

RunResult run(const RefinementConfig& config, const ProblemData& data,
              const EllipsoidParaboloidPair* oracle) {
  if (config.h_sequence.empty()) throw OutOfRangeError("run: empty h sequence");
  for (std::size_t k = 1; k < config.h_sequence.size(); ++k)
    if (!(config.h_sequence[k] < config.h_sequence[k - 1]))
      throw OutOfRangeError("run: h sequence must be strictly decreasing");

  RunResult result;
  using clock = std::chrono::steady_clock;
  for (std::size_t k = 0; k < config.h_sequence.size(); ++k) {
    const double h = config.h_sequence[k];
    const int level = static_cast<int>(k) + 1;
    IterationReport rep;
    rep.level = level;
    rep.h = h;
    const auto t0 = clock::now();
    try {
      std::optional<DiscreteSolution> sol;
      if (k == 0) {
        sol = solve_simple(data, h, config);
      } else {
        const DiscreteSolution& prev = result.solutions.back();
        double eps = epsilon_schedule(config.C, config.a, h);
        if (config.epsilon_mode == EpsilonMode::CriticalSearch) {
          double hi = eps;
          LevelMeshes lm = make_level_meshes(data, h);
          const TransformedGuess guess = interpolate_transformed(prev, lm, data);
          const MinSlacks ms = min_slacks(guess.r_hat, guess.z_hat, lm.cap, lm.disk, data.optics);
          for (int grow = 0; grow < 80 && !covered_at(ms, hi); ++grow) hi *= 2.0;
          double lo = 0.0;
          for (int it = 0; it < 30; ++it) {
            const double mid = 0.5 * (lo + hi);
            (covered_at(ms, mid) ? hi : lo) = mid;
          }
          eps = std::max(hi * (1.0 + config.critical_margin), 1e-12);
        }
        rep.epsilon = eps;
        auto step = refine_once(prev, h, eps, data, config);
        if (std::holds_alternative<UnboundedReport>(step)) {
          auto& ub = std::get<UnboundedReport>(step);
          rep.M = ub.M;
          rep.N = ub.N;
          rep.status = "unbounded";
          rep.wall_time_s = std::chrono::duration<double>(clock::now() - t0).count();
          result.unbounded = std::move(ub);
          result.reports.push_back(std::move(rep));
          result.halt = RunResult::Halt::Unbounded;
          result.halt_level = level;
          return result;
        }
        sol = std::move(std::get<DiscreteSolution>(step));
      }
      rep.M = sol->cap.size();
      rep.N = sol->disk.size();
      rep.constraints = sol->constraint_count;
      rep.pct_full = 100.0 * static_cast<double>(sol->constraint_count) /
                     (static_cast<double>(rep.M) * rep.N);
      rep.objective = sol->objective;
      rep.status = "optimal";
      if (oracle) {
        const ErrorReport err = reflector_errors(*sol, *oracle);
        rep.max_err_r1 = err.max_err_r1;
        rep.l2_err_r1 = err.l2_err_r1;
        rep.max_err_r2 = err.max_err_r2;
        rep.l2_err_r2 = err.l2_err_r2;
      }
      rep.wall_time_s = std::chrono::duration<double>(clock::now() - t0).count();
      result.reports.push_back(rep);
      result.solutions.push_back(std::move(*sol));
    } catch (const MemoryCapError&) {
      rep.status = "memory_cap";
      rep.wall_time_s = std::chrono::duration<double>(clock::now() - t0).count();
      result.reports.push_back(std::move(rep));
      result.halt = RunResult::Halt::MemoryCap;
      result.halt_level = level;
      return result;
    }
  }
  result.halt = RunResult::Halt::Completed;
  return result;
}

}  // namespace reflector_ot
