#include <benchmark/benchmark.h>

#include <cmath>

#include "nibble/baselines.hpp"
#include "nibble/engine.hpp"
#include "nibble/graph.hpp"
#include "nibble/schedule.hpp"

namespace {

using namespace nibble;

Graph triangle_free(std::size_t n, double p) {
  return generate({GraphFamily::random_triangle_free, n, 0, p, 1});
}

void BM_Greedy(benchmark::State& state) {
  const Graph g = triangle_free(static_cast<std::size_t>(state.range(0)), 0.01);
  const auto order = natural_order(g.vertex_count());
  for (auto _ : state) benchmark::DoNotOptimize(greedy_color(g, order));
}
BENCHMARK(BM_Greedy)->Arg(1000)->Arg(4000);

void BM_Dsatur(benchmark::State& state) {
  const Graph g = triangle_free(static_cast<std::size_t>(state.range(0)), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(dsatur_color(g));
}
BENCHMARK(BM_Dsatur)->Arg(1000)->Arg(4000);

void BM_TriangleCheck(benchmark::State& state) {
  const Graph g = triangle_free(static_cast<std::size_t>(state.range(0)), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(is_triangle_free(g));
}
BENCHMARK(BM_TriangleCheck)->Arg(1000)->Arg(4000);

// One full round (Phases I-III) on K_{d,d} with d / 2 colors.
void BM_NibbleRound(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Graph g = generate({GraphFamily::complete_bipartite, 0, d, 0.0, 0});
  const ScheduleParams params = ScheduleParams::with_colors(d, d / 2);
  const Schedule sched = build_schedule(params);
  const ColoringState initial = init_state(g, static_cast<std::uint32_t>(params.num_colors()));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ColoringState s = initial;
    const TentativeAssignments tentative = phase1_assign(s, sched, seed);
    phase2_resolve(g, s, tentative, sched, seed);
    benchmark::DoNotOptimize(phase3_cleanup(g, s, sched));
    ++seed;
  }
}
BENCHMARK(BM_NibbleRound)->Arg(16)->Arg(64)->Arg(128);

void BM_RunRounds(benchmark::State& state) {
  const Graph g = triangle_free(2000, 0.02);
  const ScheduleParams params = ScheduleParams::with_colors(g.max_degree(), g.max_degree() / 2);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_rounds(g, params, seed++));
}
BENCHMARK(BM_RunRounds)->Unit(benchmark::kMillisecond);

void BM_BuildSchedule(benchmark::State& state) {
  const auto delta = static_cast<std::uint64_t>(state.range(0));
  const ScheduleParams params = ScheduleParams::with_k(delta, std::log(static_cast<double>(delta)) / 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_schedule(params));
}
BENCHMARK(BM_BuildSchedule)->Arg(1000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
