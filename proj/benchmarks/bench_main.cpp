#include <benchmark/benchmark.h>

#include "bkalg/bkalg.hpp"

using namespace bkalg;

namespace {

BundlePtr matrices(std::size_t atoms, std::size_t n) {
  return Bundle::uniform(AtomicMeasureSpace::uniform(atoms), FiberDescriptor::matrix(n));
}

void BM_FiberNorm(benchmark::State& state) {
  SplitMix64 rng(1);
  const FiberElement a = random::fiber_element(rng, FiberDescriptor::matrix(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(norm(a));
}
BENCHMARK(BM_FiberNorm)->DenseRange(1, 8);

void BM_FiberSpectrum(benchmark::State& state) {
  SplitMix64 rng(2);
  const FiberElement a = random::fiber_element(rng, FiberDescriptor::matrix(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(a));
}
BENCHMARK(BM_FiberSpectrum)->DenseRange(2, 8, 2);

void BM_NeumannInverse(benchmark::State& state) {
  SplitMix64 rng(3);
  const Section x = random::section_with_norm_below(rng, matrices(16, 4), 0.01 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(neumann_inverse(x, 1e-10));
}
BENCHMARK(BM_NeumannInverse)->Arg(10)->Arg(50)->Arg(90);

void BM_SectionInverse(benchmark::State& state) {
  SplitMix64 rng(4);
  const Section x = random::invertible_section(rng, matrices(state.range(0), 4));
  for (auto _ : state) benchmark::DoNotOptimize(inverse(x));
}
BENCHMARK(BM_SectionInverse)->RangeMultiplier(4)->Range(4, 256);

void BM_SpmEnumerate(benchmark::State& state) {
  SplitMix64 rng(5);
  const Section x = random::section(rng, matrices(state.range(0), 2));
  const FiberSpectrumTable table = spectrum_table(x);
  for (auto _ : state) benchmark::DoNotOptimize(spm_enumerate(table));
}
BENCHMARK(BM_SpmEnumerate)->DenseRange(2, 12, 2);

void BM_SpmProperties(benchmark::State& state) {
  SplitMix64 rng(6);
  const Section x = random::section(rng, matrices(3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(spm_properties(x, state.range(0), 1e-8, rng));
}
BENCHMARK(BM_SpmProperties)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
