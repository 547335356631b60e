#include <benchmark/benchmark.h>

#include <cmath>

#include "reflector_ot/lp.hpp"
#include "reflector_ot/mesh.hpp"
#include "reflector_ot/oracle.hpp"
#include "reflector_ot/refine.hpp"

using namespace reflector_ot;

static void CostEvaluation(benchmark::State& state) {
  const OpticalConfig cfg{2.9};
  const UnitDirection m = UnitDirection::from_planar({0.5, 0.2});
  const PlanePoint x{{-1.2, 0.7}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost_K(cfg, m, x));
  }
}
BENCHMARK(CostEvaluation);

static void CapMeshGeneration(benchmark::State& state) {
  const double h = 0.12 * std::pow(0.8, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cap_mesh(0.8, h));
  }
  state.SetLabel("n=" + std::to_string(cap_mesh(0.8, h).size()));
}
BENCHMARK(CapMeshGeneration)->DenseRange(0, 3);

static void FullProductSolve(benchmark::State& state) {
  const SyntheticDataset ds = default_dataset();
  const ProblemData pd = ds.problem();
  const int n = static_cast<int>(state.range(0));
  TriMesh cap = cap_mesh_with_count(0.8, n);
  TriMesh disk = disk_mesh_with_count(17.0 / 9.0, n + n / 4);
  pick_anchor(cap, pd.anchor_direction);
  const double anchor = std::log(rho_tilde(pd.optics, pd.anchor_rho, cap.lifted[0]));
  const DualLP lp =
      assemble(cap, disk, pd.intensity_in, pd.intensity_out, pd.optics, std::nullopt, anchor);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(lp));
  }
  state.SetLabel(std::to_string(lp.constraints.size()) + " constraints");
}
BENCHMARK(FullProductSolve)->Arg(64)->Arg(128)->Arg(264)->Unit(benchmark::kMillisecond);

static void ConstraintSelection(benchmark::State& state) {
  const SyntheticDataset ds = default_dataset();
  const ProblemData pd = ds.problem();
  const TriMesh cap = cap_mesh(0.8, 0.096);
  const TriMesh disk = disk_mesh(17.0 / 9.0, 0.096);
  std::vector<double> r_hat(cap.size()), z_hat(disk.size());
  for (int i = 0; i < cap.size(); ++i)
    r_hat[i] = std::log(rho_tilde(pd.optics, rho_exact(ds.pair, cap.lifted[i]), cap.lifted[i]));
  for (int j = 0; j < disk.size(); ++j)
    z_hat[j] = std::log(
        z_tilde(pd.optics, z_exact(ds.pair, PlanePoint{disk.samples[j]}), PlanePoint{disk.samples[j]}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        select_constraints(r_hat, z_hat, cap, disk, pd.optics, 0.16));
  }
  state.SetLabel(std::to_string(static_cast<std::size_t>(cap.size()) * disk.size()) + " pairs");
}
BENCHMARK(ConstraintSelection)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
