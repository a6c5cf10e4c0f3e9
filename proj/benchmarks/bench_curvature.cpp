#include <benchmark/benchmark.h>

#include "pfc/curvature.hpp"
#include "pfc/dual.hpp"
#include "pfc/flow.hpp"
#include "pfc/generators.hpp"

namespace {

void BM_SphereDualTable(benchmark::State& state) {
  const auto gen = pfc::generate_sphere_cell(pfc::SphereModel::Cell600, 1.0);
  pfc::DualOptions opts;
  opts.vvl_mode = pfc::VvlMode::SolidAngleApprox;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfc::build_dual_table(gen.complex, gen.metric, opts));
  }
}
BENCHMARK(BM_SphereDualTable);

void BM_SphereCurvature(benchmark::State& state) {
  const auto gen = pfc::generate_sphere_cell(pfc::SphereModel::Cell600, 1.0);
  pfc::DualOptions opts;
  opts.vvl_mode = pfc::VvlMode::SolidAngleApprox;
  const auto duals = pfc::build_dual_table(gen.complex, gen.metric, opts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfc::compute_curvature(gen.complex, gen.metric, duals));
  }
}
BENCHMARK(BM_SphereCurvature);

void BM_TorusClippedDual(benchmark::State& state) {
  const auto gen = pfc::generate_flat_torus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfc::build_dual_table(gen.complex, gen.metric, {}));
  }
}
BENCHMARK(BM_TorusClippedDual)->Arg(3)->Arg(4);

void BM_SphereFlowStep(benchmark::State& state) {
  const auto gen = pfc::generate_sphere_cell(pfc::SphereModel::Cell600, 1.0);
  pfc::FlowConfig cfg;
  cfg.steps = 1;
  cfg.dt = 1e-4;
  cfg.integrator = pfc::Integrator::Euler;
  cfg.dual.vvl_mode = pfc::VvlMode::SolidAngleApprox;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfc::integrate_flow(gen.complex, gen.metric, cfg));
  }
}
BENCHMARK(BM_SphereFlowStep);

}  // namespace

BENCHMARK_MAIN();
