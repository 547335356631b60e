#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "reflector_ot/mesh.hpp"
#include "reflector_ot/refine.hpp"

namespace reflector_ot {

/// Locale-independent shortest-of-12-significant-digits formatting; every
/// numeric output of the library goes through this.
std::string format_sig12(double v);

/// Samples CSV (index,mx,my,mz,weight — mz blank for disks) plus a companion
/// triangle CSV (i0,i1,i2).
void write_mesh_csv(const TriMesh& mesh, const std::filesystem::path& samples_path,
                    const std::filesystem::path& triangles_path);

/// Per-level solution tables:
///   r1: index,mx,my,mz,weight,r,rho
///   r2: index,x,y,weight,z,zsurf
///   raymap: i,j
void write_solution_csv(const DiscreteSolution& sol, const std::filesystem::path& r1_path,
                        const std::filesystem::path& r2_path,
                        const std::filesystem::path& raymap_path);

/// One IterationReport as a single-line JSON object.
std::string report_to_json(const IterationReport& rep);

void write_reports_jsonl(std::span<const IterationReport> reports,
                         const std::filesystem::path& path);

/// Minimal loader for the solution tables written above.
struct SolutionTable {
  std::vector<Vec2> coords;
  std::vector<double> mz;  ///< empty for r2 tables
  std::vector<double> weight, potential, surface;
};
SolutionTable read_solution_csv(const std::filesystem::path& path, bool has_mz);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace reflector_ot
