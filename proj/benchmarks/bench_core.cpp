#include <benchmark/benchmark.h>

#include <cmath>

#include "warpest/bounds.hpp"
#include "warpest/proofcheck.hpp"

using namespace warpest;

namespace {

ModelBase make_hyperbolic(int count) {
  return build_radial_base(BaseKind::hyperbolic, 2, 0.5, 2.5, count, 0.0, 2.0);
}

void BM_DriftLaplacian(benchmark::State& state) {
  ModelBase base = make_hyperbolic(static_cast<int>(state.range(0)));
  ScalarProfile u = ScalarProfile::sample(base.grid(),
                                          [](double r) { return std::exp(0.5 * r); });
  for (auto _ : state) {
    benchmark::DoNotOptimize(drift_laplacian(base, u));
  }
}
BENCHMARK(BM_DriftLaplacian)->Arg(201)->Arg(2001)->Arg(20001);

void BM_CurvatureBound(benchmark::State& state) {
  ModelBase base = make_hyperbolic(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bakry_emery_lower_bound(base, base.grid().r_min(), base.grid().r_max()));
  }
}
BENCHMARK(BM_CurvatureBound)->Arg(201)->Arg(2001);

void BM_SolveShooting(benchmark::State& state) {
  ModelBase seg = build_radial_base(BaseKind::line_segment, 1, 0.0, 3.0,
                                    static_cast<int>(state.range(0)), 0.0, 1.0);
  ScalarProfile rho = ScalarProfile::constant(seg.grid(), -2.0, "rho");
  SolveConfig config;
  config.v0 = 1.0;
  config.slope0 = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_warp_ode(seg, rho, 0.0, 2, config));
  }
}
BENCHMARK(BM_SolveShooting)->Arg(101)->Arg(301);

void BM_ComputeConstants(benchmark::State& state) {
  EstimateParams p;
  p.n = 2;
  p.m = 2.0;
  p.k = 2;
  p.beta = 0.5;
  p.eps = 0.5;
  p.K = 1.0;
  p.gamma = 1.0;
  p.R = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_constants(p));
  }
}
BENCHMARK(BM_ComputeConstants);

void BM_CutoffCertification(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cutoff(CutoffFamily::cos4));
  }
}
BENCHMARK(BM_CutoffCertification);

}  // namespace

BENCHMARK_MAIN();
