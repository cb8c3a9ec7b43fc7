#include <benchmark/benchmark.h>

#include "oracles.hpp"
#include "pf/batch.hpp"
#include "pf/verifier.hpp"

using namespace pf;

namespace {

const std::vector<Scenario>& batch_inputs() {
  static const std::vector<Scenario> s = [] {
    std::vector<Scenario> v = oracle::formation_family(32, 1, 77);
    for (Scenario& x : v) x.scheduler.kind = SchedulerKind::Async;
    return v;
  }();
  return s;
}

void BM_Batch(benchmark::State& st) {
  BatchOptions opt;
  opt.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(run_batch(batch_inputs(), opt));
  st.SetLabel(opt.parallel ? "parallel" : "serial");
}

void BM_Explore(benchmark::State& st) {
  Pattern F(oracle::explorer_pattern());
  ExploreOptions opt;
  opt.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(explore(oracle::explorer_robots(), F, opt));
  st.SetLabel(opt.parallel ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_Batch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Explore)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
