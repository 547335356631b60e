#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace reflector_ot::cli {

struct MeshArgs {
  std::string kind = "cap";  ///< "cap" | "disk"
  double radius = 0.8;
  double h = 0.12;
  std::filesystem::path out = "out";
};
int cmd_mesh(const MeshArgs& args);

struct OracleEmitArgs {
  double h = 0.12;
  std::filesystem::path out = "out";
};
int cmd_oracle_emit(const OracleEmitArgs& args);

struct SolveArgs {
  RunConfig config;
  std::filesystem::path base_dir = ".";
};
/// Exit code 0 on completion, 2 on an unbounded halt, 3 on the memory cap.
int cmd_solve(const SolveArgs& args);

struct SweepArgs {
  RunConfig config;
  std::filesystem::path base_dir = ".";
  std::vector<double> c_values;
  std::vector<double> a_values;
};
int cmd_sweep(const SweepArgs& args);

struct ValidateArgs {
  std::filesystem::path solution_dir;
};
int cmd_validate(const ValidateArgs& args);

}  // namespace reflector_ot::cli
