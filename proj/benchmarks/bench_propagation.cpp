#include <benchmark/benchmark.h>

#include <vector>

#include "demograph/graph.hpp"
#include "demograph/propagation.hpp"
#include "demograph/rng.hpp"

namespace {

using namespace demograph;

// Random sparse graph with the pipeline's typical mean degree.
SocialGraph random_graph(std::uint32_t n, double mean_degree,
                         std::uint64_t seed) {
  GraphBuilder gb;
  Rng r(seed, 7);
  const std::uint64_t m =
      static_cast<std::uint64_t>(mean_degree * n / 2);
  for (std::uint64_t e = 0; e < m; ++e) {
    const auto a = static_cast<NodeId>(r.uniform_int(n));
    auto b = static_cast<NodeId>(r.uniform_int(n));
    if (a == b) b = (b + 1) % n;
    gb.add_call(a, b, 1);
  }
  return gb.build(n);
}

void BM_propagate_step(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const SocialGraph g = random_graph(n, 10, 3);
  std::vector<int> anchors(n, -1);
  Rng r(5, 1);
  for (std::uint32_t i = 0; i < n; ++i)
    if (r.bernoulli(0.3)) anchors[i] = static_cast<int>(r.uniform_int(4));
  LabelState s = init_state_pure(g, anchors, 4, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_step(s, g));
  state.counters["nodes/s"] = benchmark::Counter(
      static_cast<double>(n), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_propagate_step)
    ->Arg(10000)
    ->Arg(100000)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
