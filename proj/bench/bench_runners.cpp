// Serial reference vs OpenMP runners on a large synthetic fixture.

#include <benchmark/benchmark.h>

#include "evr/harness/fixture.hpp"
#include "evr/harness/runners.hpp"

namespace {

using evr::harness::Execution;
using evr::harness::Mechanism;

const evr::harness::Fixture& big_fixture() {
  static const auto f = evr::harness::make_synthetic_fixture(2024, 2000, 2000, 6000);
  return f;
}

void BM_Runner(benchmark::State& state, Mechanism m, Execution exec) {
  const auto& f = big_fixture();
  for (auto _ : state) {
    auto scores = evr::harness::final_scores(f, m, exec);
    benchmark::DoNotOptimize(scores.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * f.areas.size()));
}

BENCHMARK_CAPTURE(BM_Runner, ds_serial, Mechanism::ds, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Runner, ds_parallel, Mechanism::ds, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Runner, bayes_serial, Mechanism::bayes, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Runner, bayes_parallel, Mechanism::bayes, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Runner, weights_serial, Mechanism::weights, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Runner, weights_parallel, Mechanism::weights, Execution::parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
