#include <benchmark/benchmark.h>

#include "favard/deviance.hpp"
#include "favard/gauge.hpp"
#include "favard/line.hpp"
#include "favard/monte_carlo.hpp"
#include "favard/projection.hpp"
#include "favard/realization.hpp"
#include "favard/schedule.hpp"

using namespace favard;

namespace {

void bm_derive_schedule(benchmark::State& state) {
  const GaugeSpec g = GaugeSpec::power(1);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive_schedule(g, depth));
  }
}
BENCHMARK(bm_derive_schedule)->Arg(64)->Arg(256)->Arg(1024);

void bm_eager_build(benchmark::State& state) {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  const int depth = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Realization r(s, ++seed);
    benchmark::DoNotOptimize(r.build(depth));
  }
  state.SetComplexityN(depth);
}
BENCHMARK(bm_eager_build)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void bm_prune(benchmark::State& state) {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  const DeviancePlan plan = pruning_levels(s, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Realization r(s, ++seed);
    benchmark::DoNotOptimize(prune(r, plan, 18));
  }
}
BENCHMARK(bm_prune);

void bm_lazy_trial(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const Schedule s = derive_schedule(GaugeSpec::power(1), depth);
  const DeviancePlan plan = pruning_levels(s, 8);
  const LineGeometry geom(Line::from_direction(0.501, 0.37));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(line_hit_trial(s, plan, geom, depth, ++seed));
  }
  state.SetComplexityN(depth);
}
BENCHMARK(bm_lazy_trial)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void bm_projection_merge(benchmark::State& state) {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  const Realization r(s, 9);
  const auto levels = r.build(static_cast<int>(state.range(0)));
  const SquareSet& fs = levels.back();
  for (auto _ : state) {
    benchmark::DoNotOptimize(projection_length(fs, 1.1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(fs.size()));
}
BENCHMARK(bm_projection_merge)->Arg(12)->Arg(16)->Arg(20);

void bm_pattern_enumeration(benchmark::State& state) {
  const Schedule s = derive_schedule(GaugeSpec::power(1), 64);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(deviant_fraction_exact(s, n));
  }
}
BENCHMARK(bm_pattern_enumeration)->Arg(8)->Arg(16)->Arg(22);

}  // namespace

BENCHMARK_MAIN();
