// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <algorithm>

#include "../lp_brute_force.hpp"
#include "reflector_ot/analysis.hpp"
#include "reflector_ot/interpolate.hpp"
#include "reflector_ot/lp.hpp"
#include "reflector_ot/mesh.hpp"
#include "reflector_ot/oracle.hpp"
#include "reflector_ot/quadrature.hpp"
#include "reflector_ot/refine.hpp"

using namespace reflector_ot;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const SyntheticDataset g_ds = default_dataset();
const ProblemData g_pd = g_ds.problem();

UnitDirection random_cap_dir(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double s = 0.8 * std::sqrt(uni(rng));
  const double phi = 2.0 * kPi * uni(rng);
  return UnitDirection::from_planar({s * std::cos(phi), s * std::sin(phi)});
}

PlanePoint random_disk_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double s = g_ds.disk_radius * std::sqrt(uni(rng));
  const double phi = 2.0 * kPi * uni(rng);
  return {{s * std::cos(phi), s * std::sin(phi)}};
}

void criterion_1_oracle_identity() {
  std::mt19937 rng(101);
  double worst_active = 0.0, worst_admissible = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const UnitDirection m = random_cap_dir(rng);
    const double rt = rho_tilde(g_pd.optics, rho_exact(g_ds.pair, m), m);
    const PlanePoint gx = gamma(g_ds.pair, m);
    const double zt = z_tilde(g_pd.optics, z_exact(g_ds.pair, gx), gx);
    const double k = cost_K(g_pd.optics, m, gx);
    worst_active = std::max(worst_active, std::abs(rt * zt - k) / k);
  }
  for (int t = 0; t < 1000; ++t) {
    const UnitDirection m = random_cap_dir(rng);
    const PlanePoint x = random_disk_point(rng);
    const double rt = rho_tilde(g_pd.optics, rho_exact(g_ds.pair, m), m);
    const double zt = z_tilde(g_pd.optics, z_exact(g_ds.pair, PlanePoint{x}), x);
    const double margin = std::log(rt) + std::log(zt) - log_cost(g_pd.optics, m, x);
    worst_admissible = std::min(worst_admissible, margin);
    (void)worst_admissible;
  }
  const bool pass = worst_active <= 1e-9 && worst_admissible >= -1e-9;
  report(1, "oracle identity (active along gamma, admissible everywhere)", pass,
         "max rel activity gap " + fmt(worst_active) + " (tol 1e-9), min admissibility margin " +
             fmt(worst_admissible) + " (tol -1e-9)");
}

void criterion_2_jacobian() {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double step = 1e-5;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const double s = 0.75 * std::sqrt(uni(rng));
    const double phi = 2.0 * kPi * uni(rng);
    const Vec2 p{s * std::cos(phi), s * std::sin(phi)};
    auto g = [&](Vec2 q) { return gamma(g_ds.pair, UnitDirection::from_planar(q)); };
    const Vec2 dx = (g({p.x + step, p.y}).x - g({p.x - step, p.y}).x) * (1.0 / (2.0 * step));
    const Vec2 dy = (g({p.x, p.y + step}).x - g({p.x, p.y - step}).x) * (1.0 / (2.0 * step));
    const double fd = std::abs(dx.x * dy.y - dx.y * dy.x);
    worst = std::max(worst, std::abs(jacobian(g_ds.pair, p) - fd) / fd);
  }
  report(2, "jacobian vs central finite differences (step 1e-5)", worst <= 1e-5,
         "max rel deviation " + fmt(worst) + " at 50 points (tol 1e-5)");
}

void criterion_3_energy_balance() {
  const double exact = kPi * g_ds.disk_radius * g_ds.disk_radius;
  const TriMesh cap = cap_mesh(0.8, 0.05);
  const double in_side =
      integrate_on_cap(cap, [&](const UnitDirection& m) { return g_ds.I(m); });
  const TriMesh disk = disk_mesh(g_ds.disk_radius, 0.05);
  const double out_side = integrate_on_mesh(disk, [](Vec2) { return 1.0; });
  const double rel_in = std::abs(in_side - exact) / exact;
  const double rel_out = std::abs(out_side - exact) / exact;
  report(3, "energy balance on the h=0.05 mesh", rel_in <= 1e-4 && rel_out <= 1e-4,
         "input " + fmt(in_side) + " output " + fmt(out_side) + " vs " + fmt(exact) +
             "; rel errors " + fmt(rel_in) + " / " + fmt(rel_out) + " (tol 1e-4)");
}

DualLP random_instance(std::mt19937& rng, bool sparse) {
  std::uniform_int_distribution<int> size_dist(1, sparse ? 6 : 5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int M = size_dist(rng), N = size_dist(rng);
  if (!sparse)
    while (M * N > 20) {
      M = size_dist(rng);
      N = size_dist(rng);
    }
  DualLP lp;
  lp.r_weights.resize(M);
  lp.z_weights.resize(N);
  double ws = 0.0, vs = 0.0;
  for (double& x : lp.r_weights) ws += (x = 0.2 + uni(rng));
  for (double& x : lp.z_weights) vs += (x = 0.2 + uni(rng));
  for (double& x : lp.z_weights) x *= ws / vs;
  if (sparse) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < M; ++i) pairs.emplace_back(i, static_cast<int>(uni(rng) * N) % N);
    for (int j = 0; j < N; ++j) pairs.emplace_back(static_cast<int>(uni(rng) * M) % M, j);
    while (pairs.size() < 18)
      pairs.emplace_back(static_cast<int>(uni(rng) * M) % M, static_cast<int>(uni(rng) * N) % N);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (auto [i, j] : pairs) lp.constraints.push_back({i, j, 2.0 * uni(rng) - 1.0});
  } else {
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < N; ++j) lp.constraints.push_back({i, j, 2.0 * uni(rng) - 1.0});
  }
  lp.anchor_index = 0;
  lp.anchor_value = 2.0 * uni(rng) - 1.0;
  return lp;
}

void criterion_4_lp_oracle() {
  std::mt19937 rng(404);
  double worst_gap = 0.0;
  int optimal_count = 0;
  bool certified = true;
  for (int t = 0; t < 50; ++t) {
    const DualLP lp = random_instance(rng, t % 3 == 2);
    const LPOutcome out = solve(lp);
    if (out.status == LPOutcome::Status::Optimal) {
      const auto oracle = lp_oracle::enumerate_vertices(lp);
      if (!oracle.any_feasible_vertex) {
        certified = false;
        continue;
      }
      worst_gap = std::max(worst_gap, std::abs(out.objective - oracle.best_objective) /
                                          (1.0 + std::abs(out.objective)));
      ++optimal_count;
    } else if (!out.witness || !lp_oracle::valid_unbounded_ray(lp, *out.witness)) {
      certified = false;
    }
  }

  // the reference instance at M,N ~ 60: huge-threshold refinement equals the
  // simple scheme on the same meshes
  RefinementConfig cfg;
  cfg.h_sequence = {0.315, 0.252};
  const DiscreteSolution coarse = solve_simple(g_pd, 0.315, cfg);
  const auto step = refine_once(coarse, 0.252, 1e9, g_pd, cfg);
  const DiscreteSolution direct = solve_simple(g_pd, 0.252, cfg);
  double worst_match = 1e300;
  bool sizes_ok = false;
  if (std::holds_alternative<DiscreteSolution>(step)) {
    const auto& fine = std::get<DiscreteSolution>(step);
    worst_match = 0.0;
    for (std::size_t i = 0; i < fine.r.size(); ++i)
      worst_match = std::max(worst_match, std::abs(fine.r[i] - direct.r[i]));
    for (std::size_t j = 0; j < fine.z.size(); ++j)
      worst_match = std::max(worst_match, std::abs(fine.z[j] - direct.z[j]));
    sizes_ok = fine.cap.size() >= 45 && fine.cap.size() <= 80;
  }
  const bool pass =
      certified && optimal_count >= 30 && worst_gap <= 1e-8 && worst_match <= 1e-6 && sizes_ok;
  report(4, "LP solver vs exhaustive vertex enumeration; scheme equivalence at eps=inf", pass,
         std::to_string(optimal_count) + "/50 optimal instances, max objective gap " +
             fmt(worst_gap) + " (tol 1e-8); M~" + std::to_string(direct.cap.size()) +
             " scheme match " + fmt(worst_match) + " (tol 1e-6)");
}

RunResult g_main_run;  // C = 1.7 reference run shared by criteria 5-8

void criterion_5_table_rerun() {
  const auto t0 = std::chrono::steady_clock::now();
  RefinementConfig cfg = RefinementConfig::geometric(0.12, 0.8, 4);
  g_main_run = run(cfg, g_pd, &g_ds.pair);
  const double elapsed = seconds_since(t0);
  bool pass = g_main_run.halt == RunResult::Halt::Completed && g_main_run.reports.size() == 4;
  std::string detail;
  const double bounds[3] = {0.01, 0.005, 0.0045};
  double prev = 1e300;
  if (pass) {
    for (int k = 0; k < 4; ++k) {
      const auto& rep = g_main_run.reports[k];
      const double err = rep.max_err_r1.value_or(1e300);
      if (k < 3 && err > bounds[k]) pass = false;
      if (err >= prev) pass = false;  // strictly decreasing
      prev = err;
      detail += (k ? " / " : "") + fmt(err);
    }
    detail += " vs bounds 0.01 / 0.005 / 0.0045 (level 4 unchecked), strictly decreasing; " +
              fmt(elapsed) + " s";
  } else {
    detail = "run did not complete 4 levels";
  }
  report(5, "reference rerun C=1.7, a=1, h=0.12*0.8^k: max reflector-1 errors", pass, detail);
}

void criterion_6_decay() {
  bool pass = g_main_run.reports.size() == 4;
  double alpha = 0.0;
  if (pass) {
    std::vector<double> errors, n_tot;
    for (const auto& rep : g_main_run.reports) {
      errors.push_back(rep.max_err_r1.value_or(1e300));
      n_tot.push_back(static_cast<double>(rep.M + rep.N));
    }
    alpha = decay_fit(errors, n_tot);
    pass = alpha >= -1.3 && alpha <= -0.4;
  }
  report(6, "error decay exponent over levels 1-4", pass,
         "alpha = " + fmt(alpha) + ", required within [-1.3, -0.4]");
}

void criterion_7_constraint_economy() {
  // "level 3" = three refinement iterations = the ~1148-point mesh (level 4
  // of the h-sequence); the cited reference percentages live at that size
  bool pass = true;
  std::string detail;
  for (double C : {1.0, 2.0}) {
    RefinementConfig cfg = RefinementConfig::geometric(0.12, 0.8, 4);
    cfg.C = C;
    const RunResult res = run(cfg, g_pd, nullptr);
    if (res.halt != RunResult::Halt::Completed) {
      pass = false;
      detail += "C=" + fmt(C) + ": did not complete; ";
      continue;
    }
    const double pct = res.reports.back().pct_full;
    if (pct > 35.0) pass = false;
    detail += "C=" + fmt(C) + ": " + fmt(pct) + "%; ";
  }
  const double pct17 = g_main_run.reports.empty() ? 100.0 : g_main_run.reports.back().pct_full;
  detail += "C=1.7: " + fmt(pct17) + "% (cap 35%)";
  if (pct17 > 35.0) pass = false;
  report(7, "constraint economy after 3 refinement iterations, C in [1,2], a=1", pass, detail);
}

void criterion_8_unboundedness() {
  // descending thresholds starting from C=0.8 until a run halts unbounded
  bool tripped = false;
  double c_trip = 0.0;
  int trip_level = 0;
  std::string path;
  for (double C = 0.8; C > 1e-4; C /= 4.0) {
    RefinementConfig cfg = RefinementConfig::geometric(0.12, 0.8, 4);
    cfg.C = C;
    const RunResult res = run(cfg, g_pd, nullptr);
    path += (path.empty() ? "C=" : ", C=") + fmt(C) + ":" +
            (res.halt == RunResult::Halt::Unbounded ? "unbounded@" + std::to_string(res.halt_level)
                                                    : std::string("completed"));
    if (res.halt == RunResult::Halt::Unbounded) {
      tripped = res.halt_level <= 4 && res.unbounded &&
                (res.unbounded->uncovered_rows.size() + res.unbounded->uncovered_cols.size() > 0);
      c_trip = C;
      trip_level = res.halt_level;
      break;
    }
  }
  const bool completed_ref = g_main_run.halt == RunResult::Halt::Completed;

  // coverage-predicate monotonicity: bisection bracketing succeeds on 5
  // levels, and the found threshold separates covered from uncovered
  // selections (the predicate the bisection runs on; LP boundedness above it
  // is a separate question)
  int brackets_ok = 0;
  const double coarse_h[5] = {0.40, 0.35, 0.30, 0.25, 0.20};
  for (int t = 0; t < 5; ++t) {
    RefinementConfig cfg;
    cfg.h_sequence = {coarse_h[t], coarse_h[t] * 0.8};
    const double h_next = coarse_h[t] * 0.8;
    const DiscreteSolution coarse = solve_simple(g_pd, coarse_h[t], cfg);
    try {
      const double crit = find_critical_epsilon(coarse, h_next, g_pd, cfg, {1e-9, 5.0}, 40);
      TriMesh cap = cap_mesh(g_pd.cap_planar_radius, h_next);
      TriMesh disk = disk_mesh(g_pd.disk_radius, h_next);
      pick_anchor(cap, g_pd.anchor_direction);
      const PlanarInterpolant rho_int(coarse.cap, coarse.rho);
      const PlanarInterpolant zs_int(coarse.disk, coarse.zsurf);
      std::vector<double> r_hat(cap.size()), z_hat(disk.size());
      for (int i = 0; i < cap.size(); ++i)
        r_hat[i] = std::log(rho_tilde(g_pd.optics, rho_int(cap.samples[i]), cap.lifted[i]));
      for (int j = 0; j < disk.size(); ++j)
        z_hat[j] = std::log(z_tilde(g_pd.optics, zs_int(disk.samples[j]),
                                    PlanePoint{disk.samples[j]}));
      auto covered = [&](double eps) {
        const auto pairs = select_constraints(r_hat, z_hat, cap, disk, g_pd.optics, eps);
        std::vector<char> row(cap.size(), 0), col(disk.size(), 0);
        for (auto [i, j] : pairs) {
          row[i] = 1;
          col[j] = 1;
        }
        return std::count(row.begin(), row.end(), 0) == 0 &&
               std::count(col.begin(), col.end(), 0) == 0;
      };
      if (covered(crit * 1.1) && !covered(crit * 0.9)) ++brackets_ok;
    } catch (const Error&) {
    }
  }
  const bool pass = tripped && completed_ref && brackets_ok == 5;
  report(8, "unboundedness phenomenology and coverage monotonicity", pass,
         path + "; trip C=" + fmt(c_trip) + " at level " + std::to_string(trip_level) +
             " (<=4), C=1.7 completed=" + (completed_ref ? "yes" : "no") + "; " +
             std::to_string(brackets_ok) + "/5 bisection brackets");
}

void criterion_9_gauge_invariance() {
  TriMesh cap = cap_mesh(0.8, 0.3);
  TriMesh disk = disk_mesh(g_ds.disk_radius, 0.3);
  pick_anchor(cap, g_pd.anchor_direction);
  const double anchor = std::log(rho_tilde(g_pd.optics, g_pd.anchor_rho, cap.lifted[0]));
  const DualLP lp = assemble(cap, disk, g_pd.intensity_in, g_pd.intensity_out, g_pd.optics,
                             std::nullopt, anchor);
  const LPOutcome out = solve(lp);
  bool pass = out.status == LPOutcome::Status::Optimal;
  double worst = 0.0;
  if (pass) {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int t = 0; t < 10; ++t) {
      const double c = uni(rng);
      std::vector<double> r = out.r, z = out.z;
      for (double& x : r) x += c;
      for (double& x : z) x -= c;
      worst = std::max(worst, std::abs(lp_objective(lp, r, z) - out.objective));
    }
    pass = worst <= 1e-12 * std::abs(out.objective);
  }
  report(9, "gauge invariance of the balanced objective", pass,
         "max shift deviation " + fmt(worst) + " (tol " + fmt(1e-12 * std::abs(out.objective)) +
             ") over 10 random offsets");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1_oracle_identity();
  criterion_2_jacobian();
  criterion_3_energy_balance();
  criterion_4_lp_oracle();
  criterion_5_table_rerun();
  criterion_6_decay();
  criterion_7_constraint_economy();
  criterion_8_unboundedness();
  criterion_9_gauge_invariance();
  std::printf(
      "[INFO] criterion 10: exact reference constraint counts, mesh cardinalities, and error "
      "values are not bit-reproducible under a different mesh generator and LP tolerances; "
      "criteria 5-8 are the property-based substitutes with tolerances stated above.\n");
  std::printf("acceptance: %s (%.1f s total)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
