#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "commands.hpp"
#include "config.hpp"
#include "reflector_ot/io.hpp"
#include "reflector_ot/refine.hpp"

using namespace reflector_ot;
using namespace reflector_ot::cli;

TEST_CASE("config: defaults and builtin dataset") {
  const RunConfig cfg = parse_config(R"({"dataset": {"builtin": "section4.2"}})");
  CHECK(cfg.h0 == doctest::Approx(0.12));
  CHECK(cfg.ratio == doctest::Approx(0.8));
  CHECK(cfg.levels == 3);
  CHECK(cfg.C == doctest::Approx(1.7));
  CHECK_FALSE(cfg.external.has_value());
  const ProblemBundle bundle = build_problem(cfg, ".");
  CHECK(bundle.oracle.has_value());
  CHECK(bundle.data.optics.ell == doctest::Approx(2.9));
}

TEST_CASE("config: unknown keys rejected at every level") {
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dataset": {"bogus": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"bogus": 1e-9}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dataset": {"builtin": "other"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"epsilon_mode": "magic"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"h0": -0.1})"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("config: parse of serialize is the identity") {
  RunConfig cfg;
  cfg.C = 1.3;
  cfg.a = 1.1;
  cfg.levels = 4;
  cfg.h_sequence = std::vector<double>{0.2, 0.15, 0.1};
  cfg.epsilon_mode = "critical";
  cfg.max_constraints = 123456;
  cfg.seed = 99;
  cfg.out_dir = "results";
  cfg.dump_lp = true;
  const std::string text = serialize_config(cfg);
  const RunConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.C == doctest::Approx(1.3));
  CHECK(back.h_sequence.has_value());
  CHECK(back.epsilon_mode == "critical");
  CHECK(back.dump_lp);
}

TEST_CASE("config: external dataset with radial tables") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "reflector_ot_cfg_test";
  fs::create_directories(dir);
  {
    std::ofstream in_csv(dir / "I.csv");
    in_csv << "radius,value\n0,4\n0.8,2\n";
    std::ofstream out_csv(dir / "L.csv");
    out_csv << "radius,value\n0,1\n2,1\n";
  }
  const RunConfig cfg = parse_config(R"({
    "dataset": {"external": {
      "cap_planar_radius": 0.8, "disk_radius": 1.9, "ell": 2.9,
      "intensity_in_csv": "I.csv", "intensity_out_csv": "L.csv",
      "anchor_direction": [0.8, 0], "anchor_rho": 0.7
    }}
  })");
  REQUIRE(cfg.external.has_value());
  const ProblemBundle bundle = build_problem(cfg, dir);
  CHECK_FALSE(bundle.oracle.has_value());
  // clamped linear interpolation of the profile
  CHECK(bundle.data.intensity_in(UnitDirection::from_planar({0.4, 0.0})) ==
        doctest::Approx(3.0));
  CHECK(bundle.data.intensity_in(UnitDirection::from_planar({0.0, 0.0})) ==
        doctest::Approx(4.0));
  CHECK(bundle.data.intensity_out(PlanePoint{{1.0, 0.0}}) == doctest::Approx(1.0));
  CHECK(bundle.data.anchor_rho == doctest::Approx(0.7));
  const std::string text = serialize_config(cfg);
  CHECK(serialize_config(parse_config(text)) == text);
}

TEST_CASE("validate on oracle-exact solution files reports zero error") {
  namespace fs = std::filesystem;
  const SyntheticDataset ds = default_dataset();
  const ProblemData pd = ds.problem();
  const fs::path dir = fs::temp_directory_path() / "reflector_ot_validate_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // a solution whose surfaces are sampled from the closed form
  DiscreteSolution sol;
  sol.level = 1;
  sol.h = 0.3;
  sol.cap = cap_mesh(pd.cap_planar_radius, 0.3);
  sol.disk = disk_mesh(pd.disk_radius, 0.3);
  sol.rho.resize(sol.cap.size());
  sol.r.resize(sol.cap.size());
  for (int i = 0; i < sol.cap.size(); ++i) {
    sol.rho[i] = rho_exact(ds.pair, sol.cap.lifted[i]);
    sol.r[i] = std::log(rho_tilde(pd.optics, sol.rho[i], sol.cap.lifted[i]));
  }
  sol.zsurf.resize(sol.disk.size());
  sol.z.resize(sol.disk.size());
  for (int j = 0; j < sol.disk.size(); ++j) {
    sol.zsurf[j] = z_exact(ds.pair, PlanePoint{sol.disk.samples[j]});
    sol.z[j] = std::log(z_tilde(pd.optics, sol.zsurf[j], PlanePoint{sol.disk.samples[j]}));
  }
  sol.ray_map.target.assign(sol.cap.size(), 0);
  write_solution_csv(sol, dir / "level_1_r1.csv", dir / "level_1_r2.csv",
                     dir / "level_1_raymap.csv");

  CHECK(cmd_validate({dir}) == 0);
  REQUIRE(fs::exists(dir / "validate_summary.json"));
  std::ifstream in(dir / "validate_summary.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  // the only error left is the 12-digit round trip of the CSV values
  CHECK(text.find("\"max_err_r1\":") != std::string::npos);
  const auto pos = text.find("\"max_err_r1\":");
  const double max_err = std::stod(text.substr(pos + 13));
  CHECK(max_err <= 1e-10);
  CHECK(cmd_validate({dir / "does_not_exist"}) != 0);
}

TEST_CASE("config: refinement schedule mapping") {
  RunConfig cfg;
  cfg.h0 = 0.2;
  cfg.ratio = 0.5;
  cfg.levels = 3;
  const RefinementConfig rc = refinement_config(cfg);
  REQUIRE(rc.h_sequence.size() == 3);
  CHECK(rc.h_sequence[0] == doctest::Approx(0.2));
  CHECK(rc.h_sequence[1] == doctest::Approx(0.1));
  CHECK(rc.h_sequence[2] == doctest::Approx(0.05));
  cfg.h_sequence = std::vector<double>{0.3, 0.2};
  CHECK(refinement_config(cfg).h_sequence.size() == 2);
  cfg.epsilon_mode = "critical";
  CHECK(refinement_config(cfg).epsilon_mode == EpsilonMode::CriticalSearch);
}
