#include <benchmark/benchmark.h>

#include "degroot/spectral.hpp"
#include "degroot/topology.hpp"

namespace {

using namespace degroot;

Topology sample(std::int64_t n) {
  const auto size = static_cast<std::size_t>(n);
  return generate_random(size, std::max<std::size_t>(1, size / 3), 5, true);
}

void BM_Eigenvalues(benchmark::State& state) {
  const auto t = sample(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(t.weights()));
}
BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(4, 64);

void BM_DeterminantMembership(benchmark::State& state) {
  const auto t = sample(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(has_minus_one_eigenvalue(t));
}
BENCHMARK(BM_DeterminantMembership)->RangeMultiplier(2)->Range(4, 64);

void BM_Period(benchmark::State& state) {
  const auto t = sample(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(period(t));
}
BENCHMARK(BM_Period)->RangeMultiplier(4)->Range(4, 256);

void BM_RebelBipartite(benchmark::State& state) {
  const auto t = sample(state.range(0));
  const auto types = AgentTypes::all_rebels(t.size());
  for (auto _ : state) benchmark::DoNotOptimize(rebel_bipartite(t, types));
}
BENCHMARK(BM_RebelBipartite)->RangeMultiplier(4)->Range(4, 256);

void BM_PredictMixed(benchmark::State& state) {
  const auto t = sample(state.range(0));
  std::vector<std::size_t> rebels;
  for (std::size_t j = 0; j < t.size(); j += 3) rebels.push_back(j);
  const auto types = AgentTypes::with_rebels(t.size(), rebels);
  for (auto _ : state) benchmark::DoNotOptimize(predict(t, types, 0.4));
}
BENCHMARK(BM_PredictMixed)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
