#include <benchmark/benchmark.h>

#include "ramlab/cubicfields.hpp"
#include "ramlab/intsieve.hpp"
#include "ramlab/model.hpp"
#include "ramlab/quadfields.hpp"

namespace {

void BM_OmegaReference(benchmark::State& state) {
  const auto X = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ramlab::omega_histogram_reference(X));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(X));
}
BENCHMARK(BM_OmegaReference)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_OmegaSegmented(benchmark::State& state) {
  const auto X = static_cast<std::uint64_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ramlab::omega_histogram(X, 1u << 20, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(X));
}
BENCHMARK(BM_OmegaSegmented)
    ->ArgsProduct({{1 << 20, 1 << 24}, {1, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_QuadraticDiscriminants(benchmark::State& state) {
  const auto X = static_cast<std::uint64_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    std::uint64_t n = ramlab::enumerate_fundamental_discriminants(X, [](std::span<const ramlab::FieldRecord>) {}, workers);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_QuadraticDiscriminants)->ArgsProduct({{1 << 24}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CubicFields(benchmark::State& state) {
  const auto X = static_cast<std::uint64_t>(state.range(0));
  ramlab::CubicOptions options;
  options.workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ramlab::enumerate_cubic_fields(X, nullptr, options).fields);
}
BENCHMARK(BM_CubicFields)->ArgsProduct({{1'000'000}, {1, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ModelSample(benchmark::State& state) {
  const ramlab::BernoulliFamily family(ramlab::FamilySpec::of(3), 1000);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ramlab::sample(family, 100'000, 42, workers));
}
BENCHMARK(BM_ModelSample)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
