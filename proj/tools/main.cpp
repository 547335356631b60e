#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace reflector_ot;
  CLI::App app{"two-reflector beam shaping via the dual transportation LP"};
  app.set_help_flag("--help", "print help and exit");  // frees -h for --h below
  app.require_subcommand(1);

  cli::MeshArgs mesh_args;
  auto* mesh = app.add_subcommand("mesh", "generate and export an aperture mesh");
  mesh->add_option("--kind", mesh_args.kind, "cap | disk")->check(CLI::IsMember({"cap", "disk"}));
  mesh->add_option("--radius", mesh_args.radius, "disk radius / cap planar radius");
  mesh->add_option("--h", mesh_args.h, "relative edge length");
  mesh->add_option("--out", mesh_args.out, "output directory");

  cli::OracleEmitArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle-emit", "sample the closed-form reflector pair");
  oracle->add_option("--h", oracle_args.h, "mesh edge length");
  oracle->add_option("--out", oracle_args.out, "output directory");

  std::string config_path, out_dir, epsilon_mode, c_list, a_list;
  int levels = -1;
  double c_val = -1.0, a_val = -1e300;
  std::uint64_t max_constraints = 0;
  bool dump_lp = false;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration");
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
    cmd->add_option("--levels", levels, "number of levels (overrides config)");
    cmd->add_option("--c", c_val, "threshold constant C (overrides config)");
    cmd->add_option("--a", a_val, "threshold exponent a (overrides config)");
    cmd->add_option("--epsilon-mode", epsilon_mode, "formula | critical")
        ->check(CLI::IsMember({"formula", "critical"}));
    cmd->add_option("--max-constraints", max_constraints, "constraint memory cap");
    cmd->add_flag("--dump-lp", dump_lp, "write each level's LP in interchange format");
  };

  auto* solve = app.add_subcommand("solve", "run the iterative refinement scheme");
  add_run_flags(solve);

  auto* sweep = app.add_subcommand("sweep", "calibration sweep over C and a");
  add_run_flags(sweep);
  sweep->add_option("--c-values", c_list, "comma-separated C grid")->required();
  sweep->add_option("--a-values", a_list, "comma-separated a grid")->required();

  cli::ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "error report for a solution directory");
  validate->add_option("--dir", validate_args.solution_dir, "solution directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh->parsed()) return cli::cmd_mesh(mesh_args);
    if (oracle->parsed()) return cli::cmd_oracle_emit(oracle_args);

    if (solve->parsed() || sweep->parsed()) {
      cli::RunConfig cfg;
      std::filesystem::path base_dir = ".";
      if (!config_path.empty()) {
        cfg = cli::load_config(config_path);
        base_dir = std::filesystem::path(config_path).parent_path();
        if (base_dir.empty()) base_dir = ".";
      }
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (levels > 0) {
        cfg.levels = levels;
        cfg.h_sequence.reset();
      }
      if (c_val > 0.0) cfg.C = c_val;
      if (a_val > -1e299) cfg.a = a_val;
      if (!epsilon_mode.empty()) cfg.epsilon_mode = epsilon_mode;
      if (max_constraints > 0) cfg.max_constraints = max_constraints;
      if (dump_lp) cfg.dump_lp = true;

      if (solve->parsed()) return cli::cmd_solve({cfg, base_dir});
      cli::SweepArgs sa{cfg, base_dir, parse_list(c_list), parse_list(a_list)};
      if (sa.c_values.empty() || sa.a_values.empty()) {
        std::cerr << "sweep: empty C or a grid\n";
        return 1;
      }
      return cli::cmd_sweep(sa);
    }
    if (validate->parsed()) return cli::cmd_validate(validate_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
