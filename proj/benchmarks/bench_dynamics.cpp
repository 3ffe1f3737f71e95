#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "degroot/dynamics.hpp"
#include "degroot/topology.hpp"

namespace {

using namespace degroot;

std::vector<double> random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = draw(rng);
  return x;
}

// One synchronous update, dense-ish graph with half the agents rebels.
void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = generate_random(n, n / 2, 42, true);
  std::vector<std::size_t> rebels;
  for (std::size_t j = 0; j < n; j += 2) rebels.push_back(j);
  const auto types = AgentTypes::with_rebels(n, rebels);
  const auto confidence = Confidence::uniform(0.3, n);
  OpinionState x{random_state(n, 7), 0};
  for (auto _ : state) {
    x = step(x, t, types, confidence);
    benchmark::DoNotOptimize(x.x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Step)->RangeMultiplier(4)->Range(8, 512);

void BM_StepPerAgentLambda(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = generate_random(n, n / 2, 42, true);
  const auto types = AgentTypes::all_rebels(n);
  std::vector<double> lambdas(n);
  for (std::size_t j = 0; j < n; ++j) lambdas[j] = 0.1 + 0.8 * static_cast<double>(j) / static_cast<double>(n);
  const auto confidence = Confidence::per_agent(lambdas);
  OpinionState x{random_state(n, 7), 0};
  for (auto _ : state) {
    x = step(x, t, types, confidence);
    benchmark::DoNotOptimize(x.x.data());
  }
}
BENCHMARK(BM_StepPerAgentLambda)->RangeMultiplier(4)->Range(8, 512);

// Full run to the default step tolerance, all rebels on a primitive graph.
void BM_RunToConvergence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = generate_random(n, 3, 11, true);
  const auto types = AgentTypes::all_rebels(n);
  const auto confidence = Confidence::uniform(0.5, n);
  const auto x0 = random_state(n, 3);
  std::size_t steps = 0;
  for (auto _ : state) {
    const auto traj = run(x0, t, types, confidence);
    steps = traj.iterations_used;
    benchmark::DoNotOptimize(traj.states.back().x.data());
  }
  state.counters["iterations"] = static_cast<double>(steps);
}
BENCHMARK(BM_RunToConvergence)->Arg(8)->Arg(32)->Arg(64);

}  // namespace
