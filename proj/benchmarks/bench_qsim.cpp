#include <benchmark/benchmark.h>

#include "haardist/povm.hpp"
#include "haardist/qsim.hpp"

using namespace haardist;

namespace {

void BM_HaarUnitary(benchmark::State& state) {
  Rng rng(1);
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_unitary(dim, rng));
  }
}
BENCHMARK(BM_HaarUnitary)->Arg(4)->Arg(16);

void BM_HaarMixedState(benchmark::State& state) {
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        haar_mixed_state(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), rng));
  }
}
BENCHMARK(BM_HaarMixedState)->Args({4, 2})->Args({16, 4});

void BM_Brickwork(benchmark::State& state) {
  CircuitConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.layers = static_cast<int>(state.range(1));
  cfg.gamma = 0.1;
  cfg.seed = 1;
  std::uint64_t index = 0;
  for (auto _ : state) {
    cfg.sample_index = index++;
    benchmark::DoNotOptimize(run_brickwork(cfg));
  }
}
BENCHMARK(BM_Brickwork)->Args({4, 16})->Args({6, 16})->Args({8, 16});

void BM_Probabilities(benchmark::State& state) {
  const auto kind = static_cast<PovmKind>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const MeasurementSet set = MeasurementSet::build(kind, n);
  Rng rng(2);
  const DensityState rho = haar_mixed_state(1 << n, 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(set.probabilities(rho));
  }
}
BENCHMARK(BM_Probabilities)
    ->Args({static_cast<long>(PovmKind::pvm), 4})
    ->Args({static_cast<long>(PovmKind::sic), 4})
    ->Args({static_cast<long>(PovmKind::nonsic), 4})
    ->Args({static_cast<long>(PovmKind::sic), 6});

}  // namespace

BENCHMARK_MAIN();
