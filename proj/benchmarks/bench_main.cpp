#include <benchmark/benchmark.h>

#include <random>

#include "nilharm/fourier.hpp"
#include "nilharm/harmonic.hpp"
#include "nilharm/invariant_ops.hpp"
#include "nilharm/lie_groups.hpp"

using namespace nilharm;

namespace {

Coords random_coords(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Coords c(n);
  for (double& x : c) x = u(rng);
  return c;
}

void BM_UnipotentMul(benchmark::State& state) {
  const GroupSpec spec(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const UnipotentElement g(spec, random_coords(rng, static_cast<std::size_t>(spec.dim_n())).span());
  const UnipotentElement h(spec, random_coords(rng, static_cast<std::size_t>(spec.dim_n())).span());
  for (auto _ : state) benchmark::DoNotOptimize(unipotent_mul(g, h));
}
BENCHMARK(BM_UnipotentMul)->DenseRange(2, 6, 2);

void BM_SolvableMul(benchmark::State& state) {
  const GroupSpec spec(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(2);
  const auto p = SolvableElement::from_coords(spec, random_coords(rng, static_cast<std::size_t>(spec.dim_s())).span());
  const auto q = SolvableElement::from_coords(spec, random_coords(rng, static_cast<std::size_t>(spec.dim_s())).span());
  for (auto _ : state) benchmark::DoNotOptimize(solvable_mul(p, q));
}
BENCHMARK(BM_SolvableMul)->DenseRange(2, 6, 2);

void BM_FourierForward(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  const GridFunction g = sample(TestFunction::gaussian(3, 1.0), uniform_grid(3, P, 8.0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_forward(g));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.size()));
}
BENCHMARK(BM_FourierForward)->Arg(16)->Arg(32)->Arg(64);

void BM_GroupConvolution(benchmark::State& state) {
  const GroupSpec spec(3);
  const auto P = static_cast<std::size_t>(state.range(0));
  const TestFunction g = TestFunction::gaussian(3, 2.0), f = TestFunction::gaussian(3, 1.0);
  const PointList pts{Coords{0.1, 0.2, -0.3}};
  const GridSpec grid = uniform_grid(3, P, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(convolve_group(g, f, BaseGroup::N, spec, pts, grid));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid_size(grid)));
}
BENCHMARK(BM_GroupConvolution)->Arg(16)->Arg(32);

void BM_OperatorStencil(benchmark::State& state) {
  const GroupSpec spec(3);
  const auto u = EnvelopingElement::generator(3, 0) * EnvelopingElement::generator(3, 1);
  const TestFunction f = TestFunction::gaussian(3, 1.0);
  const PointList pts{Coords{0.1, 0.2, -0.3}};
  const StencilOptions opts{1e-2, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(apply_P(u, f, FieldGroup::N, spec, pts, opts));
}
BENCHMARK(BM_OperatorStencil)->Arg(2)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
