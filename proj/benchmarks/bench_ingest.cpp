#include <benchmark/benchmark.h>

#include "demograph/dataset.hpp"
#include "demograph/features.hpp"
#include "demograph/synth.hpp"

namespace {

using namespace demograph;

SynthConfig bench_config(std::uint32_t users) {
  SynthConfig cfg;
  cfg.seed = 99;
  cfg.n_users = users;
  cfg.window_months = 1;
  return cfg;
}

void BM_ingest(benchmark::State& state) {
  const SynthBuffers buf =
      generate_buffers(bench_config(static_cast<std::uint32_t>(state.range(0))));
  std::uint64_t events = 0;
  for (auto _ : state) {
    const Dataset ds =
        ingest_buffers(buf.cdr, buf.sms, buf.clients, buf.truth);
    events = ds.accepted_calls + ds.accepted_sms;
    benchmark::DoNotOptimize(ds.graph.num_edges());
  }
  state.counters["events/s"] = benchmark::Counter(
      static_cast<double>(events), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_ingest)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_feature_extraction(benchmark::State& state) {
  const SynthBuffers buf =
      generate_buffers(bench_config(static_cast<std::uint32_t>(state.range(0))));
  const Dataset ds = ingest_buffers(buf.cdr, buf.sms, buf.clients, buf.truth);
  for (auto _ : state) {
    const RowMatrix feats = extract_features(ds);
    benchmark::DoNotOptimize(feats.v.data());
  }
  state.counters["users/s"] = benchmark::Counter(
      static_cast<double>(ds.clients.size()),
      benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_feature_extraction)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
