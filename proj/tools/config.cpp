#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reflector_ot/io.hpp"

namespace reflector_ot::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end())
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

double require_positive(const json& v, const char* name) {
  if (!v.is_number()) throw ConfigError(std::string(name) + " must be a number");
  const double x = v.get<double>();
  if (!(x > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  return x;
}

/// Clamped piecewise-linear radial profile loaded from a (radius,value) CSV.
struct RadialProfile {
  std::vector<double> r, v;

  double operator()(double s) const {
    if (s <= r.front()) return v.front();
    if (s >= r.back()) return v.back();
    const auto it = std::upper_bound(r.begin(), r.end(), s);
    const std::size_t hi = it - r.begin();
    const double t = (s - r[hi - 1]) / (r[hi] - r[hi - 1]);
    return v[hi - 1] + t * (v[hi] - v[hi - 1]);
  }
};

RadialProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open intensity table: " + path.string());
  RadialProfile p;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("bad row in " + path.string() + ": '" + line + "'");
    p.r.push_back(std::stod(line.substr(0, comma)));
    p.v.push_back(std::stod(line.substr(comma + 1)));
  }
  if (p.r.size() < 2 || !std::is_sorted(p.r.begin(), p.r.end()))
    throw ConfigError("intensity table needs >= 2 rows with ascending radius: " + path.string());
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(root, "config",
                 {"dataset", "h0", "ratio", "levels", "h_sequence", "C", "a", "epsilon_mode",
                  "critical_margin", "tolerances", "max_constraints", "seed", "out_dir",
                  "dump_lp"});

  RunConfig cfg;
  if (root.contains("dataset")) {
    const json& ds = root["dataset"];
    reject_unknown(ds, "dataset", {"builtin", "external"});
    if (ds.contains("builtin")) {
      if (ds.contains("external")) throw ConfigError("dataset: give builtin or external, not both");
      if (ds["builtin"].get<std::string>() != "section4.2")
        throw ConfigError("unknown builtin dataset '" + ds["builtin"].get<std::string>() + "'");
    } else if (ds.contains("external")) {
      const json& e = ds["external"];
      reject_unknown(e, "dataset.external",
                     {"cap_planar_radius", "disk_radius", "ell", "intensity_in_csv",
                      "intensity_out_csv", "anchor_direction", "anchor_rho"});
      ExternalDataset ext;
      ext.cap_planar_radius = require_positive(e.at("cap_planar_radius"), "cap_planar_radius");
      ext.disk_radius = require_positive(e.at("disk_radius"), "disk_radius");
      ext.ell = require_positive(e.at("ell"), "ell");
      ext.intensity_in_csv = e.at("intensity_in_csv").get<std::string>();
      ext.intensity_out_csv = e.at("intensity_out_csv").get<std::string>();
      const auto& ad = e.at("anchor_direction");
      if (!ad.is_array() || ad.size() != 2)
        throw ConfigError("anchor_direction must be [mx, my]");
      ext.anchor_mx = ad[0].get<double>();
      ext.anchor_my = ad[1].get<double>();
      ext.anchor_rho = require_positive(e.at("anchor_rho"), "anchor_rho");
      cfg.external = std::move(ext);
    } else {
      throw ConfigError("dataset: expected builtin or external");
    }
  }
  if (root.contains("h0")) cfg.h0 = require_positive(root["h0"], "h0");
  if (root.contains("ratio")) {
    cfg.ratio = require_positive(root["ratio"], "ratio");
    if (cfg.ratio >= 1.0) throw ConfigError("ratio must be < 1");
  }
  if (root.contains("levels")) {
    cfg.levels = root["levels"].get<int>();
    if (cfg.levels < 1) throw ConfigError("levels must be >= 1");
  }
  if (root.contains("h_sequence")) {
    std::vector<double> seq = root["h_sequence"].get<std::vector<double>>();
    if (seq.empty() || !std::is_sorted(seq.rbegin(), seq.rend()))
      throw ConfigError("h_sequence must be nonempty and strictly decreasing");
    cfg.h_sequence = std::move(seq);
  }
  if (root.contains("C")) cfg.C = require_positive(root["C"], "C");
  if (root.contains("a")) cfg.a = root["a"].get<double>();
  if (root.contains("epsilon_mode")) {
    cfg.epsilon_mode = root["epsilon_mode"].get<std::string>();
    if (cfg.epsilon_mode != "formula" && cfg.epsilon_mode != "critical")
      throw ConfigError("epsilon_mode must be 'formula' or 'critical'");
  }
  if (root.contains("critical_margin"))
    cfg.critical_margin = root["critical_margin"].get<double>();
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    reject_unknown(t, "tolerances", {"feasibility", "optimality", "activity"});
    if (t.contains("feasibility")) cfg.feas_tol = require_positive(t["feasibility"], "feasibility");
    if (t.contains("optimality")) cfg.opt_tol = require_positive(t["optimality"], "optimality");
    if (t.contains("activity")) cfg.act_tol = require_positive(t["activity"], "activity");
  }
  if (root.contains("max_constraints"))
    cfg.max_constraints = root["max_constraints"].get<std::uint64_t>();
  if (root.contains("seed")) cfg.seed = root["seed"].get<std::uint64_t>();
  if (root.contains("out_dir")) cfg.out_dir = root["out_dir"].get<std::string>();
  if (root.contains("dump_lp")) cfg.dump_lp = root["dump_lp"].get<bool>();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream o;
  o << "{\n  \"dataset\": ";
  if (cfg.external) {
    const auto& e = *cfg.external;
    o << "{\"external\": {\"cap_planar_radius\": " << format_sig12(e.cap_planar_radius)
      << ", \"disk_radius\": " << format_sig12(e.disk_radius)
      << ", \"ell\": " << format_sig12(e.ell) << ", \"intensity_in_csv\": \""
      << e.intensity_in_csv << "\", \"intensity_out_csv\": \"" << e.intensity_out_csv
      << "\", \"anchor_direction\": [" << format_sig12(e.anchor_mx) << ", "
      << format_sig12(e.anchor_my) << "], \"anchor_rho\": " << format_sig12(e.anchor_rho)
      << "}},\n";
  } else {
    o << "{\"builtin\": \"section4.2\"},\n";
  }
  o << "  \"h0\": " << format_sig12(cfg.h0) << ",\n";
  o << "  \"ratio\": " << format_sig12(cfg.ratio) << ",\n";
  o << "  \"levels\": " << cfg.levels << ",\n";
  if (cfg.h_sequence) {
    o << "  \"h_sequence\": [";
    for (std::size_t k = 0; k < cfg.h_sequence->size(); ++k)
      o << (k ? ", " : "") << format_sig12((*cfg.h_sequence)[k]);
    o << "],\n";
  }
  o << "  \"C\": " << format_sig12(cfg.C) << ",\n";
  o << "  \"a\": " << format_sig12(cfg.a) << ",\n";
  o << "  \"epsilon_mode\": \"" << cfg.epsilon_mode << "\",\n";
  o << "  \"critical_margin\": " << format_sig12(cfg.critical_margin) << ",\n";
  o << "  \"tolerances\": {\"feasibility\": " << format_sig12(cfg.feas_tol)
    << ", \"optimality\": " << format_sig12(cfg.opt_tol)
    << ", \"activity\": " << format_sig12(cfg.act_tol) << "},\n";
  o << "  \"max_constraints\": " << cfg.max_constraints << ",\n";
  o << "  \"seed\": " << cfg.seed << ",\n";
  o << "  \"out_dir\": \"" << cfg.out_dir << "\",\n";
  o << "  \"dump_lp\": " << (cfg.dump_lp ? "true" : "false") << "\n}\n";
  return o.str();
}

ProblemBundle build_problem(const RunConfig& cfg, const std::filesystem::path& base_dir) {
  ProblemBundle bundle;
  if (!cfg.external) {
    const SyntheticDataset ds = default_dataset();
    bundle.data = ds.problem();
    bundle.oracle = ds.pair;
    return bundle;
  }
  const auto& e = *cfg.external;
  const RadialProfile in_profile = load_profile(base_dir / e.intensity_in_csv);
  const RadialProfile out_profile = load_profile(base_dir / e.intensity_out_csv);
  ProblemData data;
  data.cap_planar_radius = e.cap_planar_radius;
  data.disk_radius = e.disk_radius;
  data.optics = OpticalConfig{e.ell};
  data.intensity_in = [in_profile](const UnitDirection& m) { return in_profile(m.mx.norm()); };
  data.intensity_out = [out_profile](const PlanePoint& x) { return out_profile(x.x.norm()); };
  data.anchor_direction = UnitDirection::from_planar({e.anchor_mx, e.anchor_my});
  data.anchor_rho = e.anchor_rho;
  bundle.data = std::move(data);
  return bundle;
}

RefinementConfig refinement_config(const RunConfig& cfg) {
  RefinementConfig rc;
  if (cfg.h_sequence)
    rc.h_sequence = *cfg.h_sequence;
  else
    rc = RefinementConfig::geometric(cfg.h0, cfg.ratio, cfg.levels);
  rc.C = cfg.C;
  rc.a = cfg.a;
  rc.epsilon_mode =
      cfg.epsilon_mode == "critical" ? EpsilonMode::CriticalSearch : EpsilonMode::Formula;
  rc.critical_margin = cfg.critical_margin;
  rc.feas_tol = cfg.feas_tol;
  rc.opt_tol = cfg.opt_tol;
  rc.act_tol = cfg.act_tol;
  rc.max_constraints = cfg.max_constraints;
  return rc;
}

}  // namespace reflector_ot::cli
