// Serial reference loops against the OpenMP ones. Both produce identical
// rows; only the wall time should differ.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "polar/catalog.hpp"
#include "polar/harness.hpp"

using namespace polar;

namespace {

SimOptions options(DecoderKind k, int workers) {
  SimOptions opt;
  opt.decoder = k;
  opt.seed = 42;
  opt.stop = {1'000'000, 2000};  // fixed frame count
  opt.workers = workers;
  return opt;
}

const CodeSpec& code() {
  static const CodeSpec c = catalog::code_1024_512();
  return c;
}

void BM_MonteCarloSerial(benchmark::State& st) {
  const auto opt = options(static_cast<DecoderKind>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(montecarlo_serial(code(), {2.0}, opt));
  st.SetItemsProcessed(st.iterations() * 2000);
}

void BM_MonteCarloParallel(benchmark::State& st) {
  const auto opt = options(static_cast<DecoderKind>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(montecarlo(code(), {2.0}, opt));
  st.SetItemsProcessed(st.iterations() * 2000);
}

void BM_EquivalenceSerial(benchmark::State& st) {
  const QuantSpec q;
  for (auto _ : st) benchmark::DoNotOptimize(equivalence_run_serial(code(), q, {}, 1000, 2.0, 7));
  st.SetItemsProcessed(st.iterations() * 1000);
}

void BM_EquivalenceParallel(benchmark::State& st) {
  const QuantSpec q;
  for (auto _ : st)
    benchmark::DoNotOptimize(equivalence_run(code(), q, {}, 1000, 2.0, 7, static_cast<int>(st.range(0))));
  st.SetItemsProcessed(st.iterations() * 1000);
}

void thread_counts(benchmark::internal::Benchmark* b) {
  for (auto k : {DecoderKind::sc_fixed, DecoderKind::fastssc_fixed})
    for (int w = 1; w <= omp_get_max_threads(); w *= 2) b->Args({static_cast<long>(k), w});
}

void kinds(benchmark::internal::Benchmark* b) {
  for (auto k : {DecoderKind::sc_fixed, DecoderKind::fastssc_fixed}) b->Arg(static_cast<long>(k));
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Apply(kinds)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EquivalenceSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EquivalenceParallel)->DenseRange(1, 4, 1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
