#include <benchmark/benchmark.h>

#include "haardist/analytic.hpp"
#include "haardist/spectrum.hpp"

using namespace haardist;

namespace {

// Three distinct eigenvalues so the general piecewise construction runs.
Spectrum three_point(int d) {
  return Spectrum::from_rationals(
      {{Rational(0), d - 2}, {Rational(1, 2), 1}, {Rational(1), 1}});
}

void BM_BuildBeta(benchmark::State& state) {
  const Spectrum spec = Spectrum::from_values({{0.0, 15}, {1.0, 1}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_distribution(spec, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BuildBeta)->Arg(1)->Arg(4)->Arg(16);

void BM_BuildPiecewise(benchmark::State& state) {
  const Spectrum spec = three_point(static_cast<int>(state.range(0)));
  const int s = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_distribution(spec, s));
  }
}
BENCHMARK(BM_BuildPiecewise)->Args({4, 1})->Args({8, 2})->Args({16, 4});

void BM_DensityEval(benchmark::State& state) {
  const AnalyticDistribution dist =
      build_distribution(three_point(static_cast<int>(state.range(0))), 2);
  double x = 0.009;
  for (auto _ : state) {
    x = x < 0.99 ? x + 0.0071 : 0.009;
    benchmark::DoNotOptimize(dist.density(x));
  }
}
BENCHMARK(BM_DensityEval)->Arg(4)->Arg(8)->Arg(16);

void BM_CdfEval(benchmark::State& state) {
  const AnalyticDistribution dist =
      build_distribution(three_point(static_cast<int>(state.range(0))), 2);
  double x = 0.009;
  for (auto _ : state) {
    x = x < 0.99 ? x + 0.0071 : 0.009;
    benchmark::DoNotOptimize(dist.cdf(x));
  }
}
BENCHMARK(BM_CdfEval)->Arg(4)->Arg(8)->Arg(16);

void BM_MomentsClosedForm(benchmark::State& state) {
  const Spectrum spec = three_point(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments_closed_form(spec, 3, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_MomentsClosedForm)->Arg(4)->Arg(8);

void BM_MomentsNewton(benchmark::State& state) {
  const Spectrum spec = three_point(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments_newton(spec, 3, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_MomentsNewton)->Arg(4)->Arg(8);

void BM_MomentPermutationOracle(benchmark::State& state) {
  const Spectrum spec = three_point(6);
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments_permutation_oracle(spec, 3, t));
  }
}
BENCHMARK(BM_MomentPermutationOracle)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
