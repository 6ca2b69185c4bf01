#include <benchmark/benchmark.h>

#include <logsplit/gagliardo.hpp>
#include <logsplit/initdata.hpp>
#include <logsplit/splitting.hpp>
#include <logsplit/transform.hpp>

using namespace logsplit;

// One Lie-Trotter step at cutoff N on the 4x oversampled grid.
static void BM_SplittingStep(benchmark::State &state) {
  SolverConfig c;
  c.lambda = -1.0;
  c.tau = 0x1.0p-10;
  c.N = static_cast<int>(state.range(0));
  Stepper stepper(c);
  SolverState s = stepper.init(make_random_hs({0.8, 0.51, 4096, 42}));
  for (auto _ : state) {
    stepper.step(s);
    benchmark::DoNotOptimize(s.coeffs.coeffs().data());
  }
  state.counters["M"] = stepper.grid().nodes_per_dim();
}
BENCHMARK(BM_SplittingStep)->Arg(16)->Arg(64)->Arg(200)->Arg(256);

static void BM_ForwardSynthesize(benchmark::State &state) {
  const int N = static_cast<int>(state.range(0));
  const TorusGrid grid = TorusGrid::oversampled(1, N, 4);
  FourierTransform &ft = transform_for(1, grid.nodes_per_dim());
  SpectralField f = random_hs_coeffs({0.8, 0.51, N, 1});
  std::vector<cplx> values(grid.node_count());
  for (auto _ : state) {
    ft.synthesize(f, values);
    ft.forward(values, f);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(values.size()));
}
BENCHMARK(BM_ForwardSynthesize)->RangeMultiplier(4)->Range(16, 4096);

// Per-mode Gagliardo weight: graded panels below the rescaling limit, the
// rotated-contour tail above it.
static void BM_ModeWeight(benchmark::State &state) {
  const long n = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(gagliardo_mode_weight(n, 0.4).value);
}
BENCHMARK(BM_ModeWeight)->Arg(1)->Arg(16)->Arg(256)->Arg(257)->Arg(100000);

static void BM_PowerCoefficients(benchmark::State &state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(power_singular_coeffs({0.3, 2}, K).coeffs().data());
}
BENCHMARK(BM_PowerCoefficients)->Arg(256)->Arg(4096);
BENCHMARK_MAIN();
