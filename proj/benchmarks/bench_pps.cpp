#include <benchmark/benchmark.h>

#include "demograph/matrix.hpp"
#include "demograph/pps.hpp"
#include "demograph/rng.hpp"

namespace {

using namespace demograph;

RowMatrix random_proba(std::size_t rows, std::size_t cats, std::uint64_t seed) {
  RowMatrix m(rows, cats);
  Rng r(seed, 2);
  for (std::size_t i = 0; i < rows; ++i) {
    double sum = 0;
    for (std::size_t c = 0; c < cats; ++c) {
      m.at(i, c) = r.uniform01() + 1e-9;
      sum += m.at(i, c);
    }
    for (std::size_t c = 0; c < cats; ++c) m.at(i, c) /= sum;
  }
  return m;
}

void BM_pps_assign(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const RowMatrix proba = random_proba(rows, 4, 11);
  const QuotaPlan plan =
      compute_quotas(rows, 0.5, {0.15, 0.35, 0.35, 0.15});
  for (auto _ : state) {
    const PpsAssignment asg = pps_assign(proba, plan);
    benchmark::DoNotOptimize(asg.category.data());
  }
  state.counters["rows/s"] = benchmark::Counter(
      static_cast<double>(rows), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_pps_assign)
    ->Arg(100000)
    ->Arg(1000000)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
