#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "reflector_ot/lp.hpp"
#include "reflector_ot/mesh.hpp"
#include "reflector_ot/oracle.hpp"
#include "reflector_ot/problem.hpp"

namespace reflector_ot {

/// One discretization level's solved state: LP potentials, recovered
/// reflector surfaces, and the discrete ray map.
struct DiscreteSolution {
  int level = 0;
  double h = 0.0;
  TriMesh cap;
  TriMesh disk;
  std::vector<double> r;      ///< log rho~ at cap samples
  std::vector<double> z;      ///< log z~ at disk samples
  std::vector<double> rho;    ///< recovered first-reflector radii
  std::vector<double> zsurf;  ///< recovered second-reflector heights
  RayMap ray_map;
  std::size_t constraint_count = 0;
  double objective = 0.0;
};

enum class EpsilonMode { Formula, CriticalSearch };

struct RefinementConfig {
  std::vector<double> h_sequence;  ///< strictly decreasing
  double C = 1.7;
  double a = 1.0;
  EpsilonMode epsilon_mode = EpsilonMode::Formula;
  double critical_margin = 0.1;  ///< relative headroom above the found critical value
  double feas_tol = kDefaultFeasTol;
  double opt_tol = kDefaultOptTol;
  double act_tol = kDefaultActTol;
  std::size_t max_constraints = 5'000'000;
  /// When set, each level's assembled LP is dumped as level_<k>.lp here.
  std::optional<std::filesystem::path> lp_dump_dir;

  static RefinementConfig geometric(double h0, double ratio, int n_levels);
};

struct IterationReport {
  int level = 0;
  double h = 0.0;
  int M = 0;
  int N = 0;
  std::optional<double> epsilon;  ///< absent on the initial full-product level
  std::size_t constraints = 0;
  double pct_full = 0.0;
  std::optional<double> objective;
  std::string status;  ///< "optimal" | "unbounded" | "memory_cap"
  std::optional<double> max_err_r1, l2_err_r1, max_err_r2, l2_err_r2;
  double wall_time_s = 0.0;
};

struct UnboundedReport {
  int level = 0;
  double h = 0.0;
  double epsilon = 0.0;
  int M = 0;
  int N = 0;
  std::vector<int> uncovered_rows, uncovered_cols;
};

/// epsilon(k) = C * h_k^a.
double epsilon_schedule(double C, double a, double h_k);

/// The simple scheme: meshes at h0, the full constraint product, one solve.
DiscreteSolution solve_simple(const ProblemData& data, double h0, const RefinementConfig& config);

/// Piecewise-linear interpolation of the solution's nodal r (resp. z) values,
/// nearest-sample fallback outside the hull.
std::vector<double> interpolate_r(const DiscreteSolution& sol,
                                  std::span<const UnitDirection> query_dirs);
std::vector<double> interpolate_z(const DiscreteSolution& sol,
                                  std::span<const PlanePoint> query_pts);

/// Pairs (i, j) with r_hat_i + z_hat_j - log K(m_i, x_j) < eps, row-major.
/// Throws MemoryCapError when the count exceeds max_constraints.
std::vector<std::pair<int, int>> select_constraints(std::span<const double> r_hat,
                                                    std::span<const double> z_hat,
                                                    const TriMesh& fine_cap,
                                                    const TriMesh& fine_disk,
                                                    const OpticalConfig& cfg, double eps,
                                                    std::size_t max_constraints = 5'000'000);

/// One refinement step: fine meshes, constraint selection through the
/// previous solution, coverage check, solve, surface recovery.
std::variant<DiscreteSolution, UnboundedReport> refine_once(const DiscreteSolution& prev,
                                                            double h_next, double eps,
                                                            const ProblemData& data,
                                                            const RefinementConfig& config);

/// Smallest eps whose selected set passes the coverage check, found by
/// bisection on the coverage predicate over [bracket.first, bracket.second].
/// This is a necessary-condition proxy for LP boundedness.
double find_critical_epsilon(const DiscreteSolution& prev, double h_next, const ProblemData& data,
                             const RefinementConfig& config, std::pair<double, double> bracket,
                             int iters = 20);

struct RunResult {
  enum class Halt { Completed, Unbounded, MemoryCap };
  Halt halt = Halt::Completed;
  int halt_level = -1;
  std::vector<DiscreteSolution> solutions;
  std::vector<IterationReport> reports;
  std::optional<UnboundedReport> unbounded;
};

/// Execute the iterative scheme over config.h_sequence; halts gracefully on
/// an unbounded level or on the constraint memory guard. When `oracle` is
/// given, per-level error columns are filled in the reports.
RunResult run(const RefinementConfig& config, const ProblemData& data,
              const EllipsoidParaboloidPair* oracle = nullptr);

}  // namespace reflector_ot
