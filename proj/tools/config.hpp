#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reflector_ot/oracle.hpp"
#include "reflector_ot/problem.hpp"
#include "reflector_ot/refine.hpp"

namespace reflector_ot::cli {

class ConfigError : public Error {
public:
  using Error::Error;
};

/// External dataset: radial intensity profiles as (radius,value) CSV tables,
/// evaluated with clamped piecewise-linear interpolation.
struct ExternalDataset {
  double cap_planar_radius = 0.0;
  double disk_radius = 0.0;
  double ell = 0.0;
  std::string intensity_in_csv;
  std::string intensity_out_csv;
  double anchor_mx = 0.0, anchor_my = 0.0;
  double anchor_rho = 1.0;
};

/// The run configuration file, strict-schema JSON. Unknown keys anywhere are
/// rejected. parse(serialize(cfg)) reproduces cfg exactly.
struct RunConfig {
  std::optional<ExternalDataset> external;  ///< absent = builtin "section4.2"
  double h0 = 0.12;
  double ratio = 0.8;
  int levels = 3;
  std::optional<std::vector<double>> h_sequence;  ///< overrides the geometric schedule
  double C = 1.7;
  double a = 1.0;
  std::string epsilon_mode = "formula";  ///< "formula" | "critical"
  double critical_margin = 0.1;
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  double act_tol = 1e-7;
  std::uint64_t max_constraints = 5'000'000;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  bool dump_lp = false;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& cfg);

/// Materialize the problem: intensities, apertures, anchor. For the builtin
/// dataset the closed-form pair is returned for error reporting.
struct ProblemBundle {
  ProblemData data;
  std::optional<EllipsoidParaboloidPair> oracle;
};
ProblemBundle build_problem(const RunConfig& cfg, const std::filesystem::path& base_dir);

/// Refinement schedule and tolerances from the config.
RefinementConfig refinement_config(const RunConfig& cfg);

}  // namespace reflector_ot::cli
