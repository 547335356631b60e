#include "reflector_ot/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "reflector_ot/errors.hpp"

namespace reflector_ot {

std::string format_sig12(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{}) throw Error("bad numeric field: '" + s + "'");
  return v;
}

}  // namespace

void write_mesh_csv(const TriMesh& mesh, const std::filesystem::path& samples_path,
                    const std::filesystem::path& triangles_path) {
  auto out = open_out(samples_path);
  out << "index,mx,my,mz,weight\n";
  for (int i = 0; i < mesh.size(); ++i) {
    out << i << ',' << format_sig12(mesh.samples[i].x) << ',' << format_sig12(mesh.samples[i].y)
        << ',';
    if (mesh.kind == MeshKind::SphericalCap) out << format_sig12(mesh.lifted[i].mz);
    out << ',' << format_sig12(mesh.weights[i]) << '\n';
  }
  auto tri = open_out(triangles_path);
  tri << "i0,i1,i2\n";
  for (const auto& t : mesh.triangles) tri << t[0] << ',' << t[1] << ',' << t[2] << '\n';
}

void write_solution_csv(const DiscreteSolution& sol, const std::filesystem::path& r1_path,
                        const std::filesystem::path& r2_path,
                        const std::filesystem::path& raymap_path) {
  auto r1 = open_out(r1_path);
  r1 << "index,mx,my,mz,weight,r,rho\n";
  for (int i = 0; i < sol.cap.size(); ++i) {
    r1 << i << ',' << format_sig12(sol.cap.samples[i].x) << ','
       << format_sig12(sol.cap.samples[i].y) << ',' << format_sig12(sol.cap.lifted[i].mz) << ','
       << format_sig12(sol.cap.weights[i]) << ',' << format_sig12(sol.r[i]) << ','
       << format_sig12(sol.rho[i]) << '\n';
  }
  auto r2 = open_out(r2_path);
  r2 << "index,x,y,weight,z,zsurf\n";
  for (int j = 0; j < sol.disk.size(); ++j) {
    r2 << j << ',' << format_sig12(sol.disk.samples[j].x) << ','
       << format_sig12(sol.disk.samples[j].y) << ',' << format_sig12(sol.disk.weights[j]) << ','
       << format_sig12(sol.z[j]) << ',' << format_sig12(sol.zsurf[j]) << '\n';
  }
  auto rm = open_out(raymap_path);
  rm << "i,j\n";
  for (int i = 0; i < static_cast<int>(sol.ray_map.target.size()); ++i)
    rm << i << ',' << sol.ray_map.target[i] << '\n';
}

std::string report_to_json(const IterationReport& rep) {
  std::ostringstream o;
  o << "{\"level\":" << rep.level << ",\"h\":" << format_sig12(rep.h) << ",\"M\":" << rep.M
    << ",\"N\":" << rep.N;
  o << ",\"epsilon\":" << (rep.epsilon ? format_sig12(*rep.epsilon) : "null");
  o << ",\"constraints\":" << rep.constraints << ",\"pct_full\":" << format_sig12(rep.pct_full);
  o << ",\"objective\":" << (rep.objective ? format_sig12(*rep.objective) : "null");
  o << ",\"status\":\"" << rep.status << "\"";
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) o << ",\"" << key << "\":" << format_sig12(*v);
  };
  opt("max_err_r1", rep.max_err_r1);
  opt("l2_err_r1", rep.l2_err_r1);
  opt("max_err_r2", rep.max_err_r2);
  opt("l2_err_r2", rep.l2_err_r2);
  o << ",\"wall_time_s\":" << format_sig12(rep.wall_time_s) << "}";
  return o.str();
}

void write_reports_jsonl(std::span<const IterationReport> reports,
                         const std::filesystem::path& path) {
  auto out = open_out(path);
  for (const auto& rep : reports) out << report_to_json(rep) << '\n';
}

SolutionTable read_solution_csv(const std::filesystem::path& path, bool has_mz) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path.string());
  SolutionTable table;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    const std::size_t expect = has_mz ? 7 : 6;
    if (f.size() != expect) throw Error("bad row in " + path.string() + ": '" + line + "'");
    std::size_t c = 1;
    table.coords.push_back({parse_double(f[c]), parse_double(f[c + 1])});
    c += 2;
    if (has_mz) table.mz.push_back(parse_double(f[c++]));
    table.weight.push_back(parse_double(f[c++]));
    table.potential.push_back(parse_double(f[c++]));
    table.surface.push_back(parse_double(f[c++]));
  }
  return table;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
}

}  // namespace reflector_ot
