// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "vmirror/kernels/betweenness.hpp"
#include "vmirror/kernels/core_periphery.hpp"
#include "vmirror/sampling.hpp"

using namespace vmirror;

namespace {

// Sparse random graph: ring for connectivity plus ~avg_degree/2 random chords per node.
Adjacency random_adjacency(std::size_t n, double avg_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  InteractionGraph g;
  auto id = [](std::size_t i) { return ActorId{"v" + std::to_string(100000 + i)}; };
  for (std::size_t i = 0; i < n; ++i) g.add_arc(id(i), id((i + 1) % n));
  const auto extra = static_cast<std::size_t>(static_cast<double>(n) * (avg_degree - 2.0) / 2.0);
  for (std::size_t k = 0; k < extra; ++k) g.add_arc(id(rng() % n), id(rng() % n));
  return Adjacency::from_graph(g, false);
}

void BM_BetweennessSerial(benchmark::State& state) {
  const auto adj = random_adjacency(static_cast<std::size_t>(state.range(0)), 8.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::betweenness_serial(adj, false));
  state.SetComplexityN(state.range(0));
}

void BM_BetweennessParallel(benchmark::State& state) {
  const auto adj = random_adjacency(static_cast<std::size_t>(state.range(0)), 8.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::betweenness_parallel(adj, false));
  state.SetComplexityN(state.range(0));
}

void BM_HillClimbSerial(benchmark::State& state) {
  const kernels::PairMatrix m(random_adjacency(static_cast<std::size_t>(state.range(0)), 6.0, 2));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::hill_climb_serial(m, 50, 0));
}

void BM_HillClimbParallel(benchmark::State& state) {
  const kernels::PairMatrix m(random_adjacency(static_cast<std::size_t>(state.range(0)), 6.0, 2));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::hill_climb_parallel(m, 50, 0));
}

const std::vector<InteractionEvent>& default_traffic() {
  static const auto events = generate_traffic(TrafficParams{});
  return events;
}

SamplingConfig sampling_config() {
  SamplingConfig c;
  c.fractions = {0.1, 0.25, 0.5};
  c.trials = 10;
  c.infer_corecipients = true;
  return c;
}

void BM_SamplingSerial(benchmark::State& state) {
  const auto& ev = default_traffic();
  const auto c = sampling_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_sampling_experiment_serial(ev, c));
}

void BM_SamplingParallel(benchmark::State& state) {
  const auto& ev = default_traffic();
  const auto c = sampling_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_sampling_experiment(ev, c));
}

}  // namespace

BENCHMARK(BM_BetweennessSerial)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BetweennessParallel)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HillClimbSerial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HillClimbParallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplingSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplingParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
