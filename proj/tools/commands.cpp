#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include "reflector_ot/analysis.hpp"
#include "reflector_ot/io.hpp"
#include "reflector_ot/lp.hpp"
#include "reflector_ot/quadrature.hpp"

namespace reflector_ot::cli {

namespace fs = std::filesystem;

int cmd_mesh(const MeshArgs& args) {
  TriMesh mesh;
  if (args.kind == "cap")
    mesh = cap_mesh(args.radius, args.h);
  else if (args.kind == "disk")
    mesh = disk_mesh(args.radius, args.h);
  else {
    std::cerr << "mesh: kind must be cap or disk\n";
    return 1;
  }
  write_mesh_csv(mesh, args.out / (args.kind + "_samples.csv"),
                 args.out / (args.kind + "_triangles.csv"));
  std::cout << args.kind << " mesh: " << mesh.size() << " samples, " << mesh.triangles.size()
            << " triangles, mean edge " << format_sig12(mesh.mean_edge_length()) << "\n";
  return 0;
}

int cmd_oracle_emit(const OracleEmitArgs& args) {
  const SyntheticDataset ds = default_dataset();
  const TriMesh cap = cap_mesh(ds.cap_planar_radius, args.h);
  const TriMesh disk = disk_mesh(ds.disk_radius, args.h);
  fs::create_directories(args.out);

  std::ofstream r1(args.out / "oracle_r1.csv");
  r1 << "index,mx,my,mz,rho,intensity\n";
  for (int i = 0; i < cap.size(); ++i) {
    const UnitDirection& m = cap.lifted[i];
    r1 << i << ',' << format_sig12(m.mx.x) << ',' << format_sig12(m.mx.y) << ','
       << format_sig12(m.mz) << ',' << format_sig12(rho_exact(ds.pair, m)) << ','
       << format_sig12(ds.I(m)) << '\n';
  }
  std::ofstream r2(args.out / "oracle_r2.csv");
  r2 << "index,x,y,z,intensity\n";
  for (int j = 0; j < disk.size(); ++j) {
    const PlanePoint x{disk.samples[j]};
    r2 << j << ',' << format_sig12(x.x.x) << ',' << format_sig12(x.x.y) << ','
       << format_sig12(z_exact(ds.pair, x)) << ',' << format_sig12(ds.L(x)) << '\n';
  }
  std::ofstream gm(args.out / "oracle_gamma.csv");
  gm << "index,mx,my,mz,gamma_x,gamma_y,jacobian\n";
  for (int i = 0; i < cap.size(); ++i) {
    const UnitDirection& m = cap.lifted[i];
    const PlanePoint g = gamma(ds.pair, m);
    gm << i << ',' << format_sig12(m.mx.x) << ',' << format_sig12(m.mx.y) << ','
       << format_sig12(m.mz) << ',' << format_sig12(g.x.x) << ',' << format_sig12(g.x.y) << ','
       << format_sig12(jacobian(ds.pair, m.mx)) << '\n';
  }
  std::cout << "oracle tables written to " << args.out.string() << " (" << cap.size() << " / "
            << disk.size() << " samples)\n";
  return 0;
}

int cmd_solve(const SolveArgs& args) {
  const ProblemBundle bundle = build_problem(args.config, args.base_dir);
  RefinementConfig rc = refinement_config(args.config);
  const fs::path out = args.base_dir / args.config.out_dir;
  fs::create_directories(out);
  write_text_file(out / "config.json", serialize_config(args.config));
  if (args.config.dump_lp) rc.lp_dump_dir = out;

  const RunResult result =
      run(rc, bundle.data, bundle.oracle ? &*bundle.oracle : nullptr);

  for (const auto& sol : result.solutions) {
    const std::string tag = "level_" + std::to_string(sol.level);
    write_solution_csv(sol, out / (tag + "_r1.csv"), out / (tag + "_r2.csv"),
                       out / (tag + "_raymap.csv"));
  }
  write_reports_jsonl(result.reports, out / "reports.jsonl");

  for (const auto& rep : result.reports) std::cout << report_to_json(rep) << "\n";
  if (result.halt == RunResult::Halt::Unbounded) {
    const auto& ub = *result.unbounded;
    std::cout << "unbounded at level " << ub.level << " (epsilon " << format_sig12(ub.epsilon)
              << ", " << ub.uncovered_rows.size() << "+" << ub.uncovered_cols.size()
              << " uncovered)\n";
    return 2;
  }
  if (result.halt == RunResult::Halt::MemoryCap) {
    std::cout << "constraint cap exceeded at level " << result.halt_level << "\n";
    return 3;
  }
  return 0;
}

int cmd_sweep(const SweepArgs& args) {
  const fs::path out = args.base_dir / args.config.out_dir;
  fs::create_directories(out);
  std::ofstream table(out / "sweep.csv");
  table << "C,a,mesh_sequence,result,constraints,pct_of_full\n";
  for (double a_val : args.a_values) {
    for (double c_val : args.c_values) {
      RunConfig cell = args.config;
      cell.C = c_val;
      cell.a = a_val;
      const ProblemBundle bundle = build_problem(cell, args.base_dir);
      const RefinementConfig rc = refinement_config(cell);
      RunResult result;
      std::string failure;
      try {
        result = run(rc, bundle.data, bundle.oracle ? &*bundle.oracle : nullptr);
      } catch (const Error& e) {
        failure = e.what();
      }
      std::string mesh_seq;
      for (const auto& rep : result.reports)
        if (rep.status == "optimal") mesh_seq += (mesh_seq.empty() ? "" : ";") + std::to_string(rep.M);
      std::string outcome;
      std::size_t max_constr = 0;
      double pct = 0.0;
      if (!failure.empty()) {
        outcome = "error";
      } else if (result.halt == RunResult::Halt::Unbounded) {
        outcome = "unbounded_on_" + std::to_string(result.unbounded->M);
      } else if (result.halt == RunResult::Halt::MemoryCap) {
        outcome = "out_of_memory";
      } else {
        const auto& last = result.reports.back();
        outcome = last.max_err_r1 ? "max_err=" + format_sig12(*last.max_err_r1) : "solved";
      }
      for (const auto& rep : result.reports) {
        max_constr = std::max(max_constr, rep.constraints);
        if (rep.status == "optimal") pct = rep.pct_full;
      }
      table << format_sig12(c_val) << ',' << format_sig12(a_val) << ',' << mesh_seq << ','
            << outcome << ',' << max_constr << ',' << format_sig12(pct) << '\n';
      std::cout << "C=" << format_sig12(c_val) << " a=" << format_sig12(a_val) << ": " << outcome
                << "\n";
    }
  }
  std::cout << "sweep table written to " << (out / "sweep.csv").string() << "\n";
  return 0;
}

int cmd_validate(const ValidateArgs& args) {
  const SyntheticDataset ds = default_dataset();
  std::map<int, fs::path> r1_files;
  const std::regex pattern("level_([0-9]+)_r1\\.csv");
  if (!fs::exists(args.solution_dir)) {
    std::cerr << "validate: no such directory " << args.solution_dir << "\n";
    return 1;
  }
  for (const auto& entry : fs::directory_iterator(args.solution_dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) r1_files[std::stoi(m[1])] = entry.path();
  }
  if (r1_files.empty()) {
    std::cerr << "validate: no level_*_r1.csv files in " << args.solution_dir << "\n";
    return 1;
  }

  std::vector<double> max_errors, n_totals;
  std::ostringstream summary;
  summary << "{\"levels\":[";
  bool first = true;
  for (const auto& [level, r1_path] : r1_files) {
    const fs::path r2_path =
        args.solution_dir / ("level_" + std::to_string(level) + "_r2.csv");
    if (!fs::exists(r2_path)) {
      std::cerr << "validate: missing " << r2_path << "\n";
      return 1;
    }
    const SolutionTable r1 = read_solution_csv(r1_path, /*has_mz=*/true);
    const SolutionTable r2 = read_solution_csv(r2_path, /*has_mz=*/false);

    double max1 = 0.0, l21 = 0.0, max2 = 0.0, l22 = 0.0;
    std::ofstream e1(args.solution_dir / ("level_" + std::to_string(level) + "_errors_r1.csv"));
    e1 << "index,mx,my,mz,err\n";
    for (std::size_t i = 0; i < r1.coords.size(); ++i) {
      const UnitDirection m{r1.coords[i], r1.mz[i]};
      const double err = std::abs(r1.surface[i] - rho_exact(ds.pair, m));
      max1 = std::max(max1, err);
      l21 += r1.weight[i] * err * err;
      e1 << i << ',' << format_sig12(m.mx.x) << ',' << format_sig12(m.mx.y) << ','
         << format_sig12(m.mz) << ',' << format_sig12(err) << '\n';
    }
    std::ofstream e2(args.solution_dir / ("level_" + std::to_string(level) + "_errors_r2.csv"));
    e2 << "index,x,y,err\n";
    for (std::size_t j = 0; j < r2.coords.size(); ++j) {
      const double err =
          std::abs(r2.surface[j] - z_exact(ds.pair, PlanePoint{r2.coords[j]}));
      max2 = std::max(max2, err);
      l22 += r2.weight[j] * err * err;
      e2 << j << ',' << format_sig12(r2.coords[j].x) << ',' << format_sig12(r2.coords[j].y)
         << ',' << format_sig12(err) << '\n';
    }
    summary << (first ? "" : ",") << "{\"level\":" << level << ",\"max_err_r1\":"
            << format_sig12(max1) << ",\"l2_err_r1\":" << format_sig12(std::sqrt(l21))
            << ",\"max_err_r2\":" << format_sig12(max2)
            << ",\"l2_err_r2\":" << format_sig12(std::sqrt(l22)) << "}";
    first = false;
    max_errors.push_back(max1);
    n_totals.push_back(static_cast<double>(r1.coords.size() + r2.coords.size()));
    std::cout << "level " << level << ": max_err_r1=" << format_sig12(max1)
              << " max_err_r2=" << format_sig12(max2) << "\n";
  }
  summary << "]";
  if (max_errors.size() >= 3) {
    const double alpha = decay_fit(max_errors, n_totals);
    summary << ",\"decay_alpha_r1\":" << format_sig12(alpha);
    std::cout << "decay alpha (r1) = " << format_sig12(alpha) << "\n";
  }
  summary << "}\n";
  write_text_file(args.solution_dir / "validate_summary.json", summary.str());
  return 0;
}

}  // namespace reflector_ot::cli
