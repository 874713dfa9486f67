#include <benchmark/benchmark.h>

#include "oracles.hpp"
#include "tec/covariance.hpp"
#include "tec/criteria.hpp"
#include "tec/datasets.hpp"
#include "tec/dsep.hpp"

using namespace tec;

namespace {

PathDiagram make_dag(int vertices, std::uint64_t seed) {
    testing::Rng rng(seed);
    // Pin the vertex count by retrying until the generator lands on it.
    for (;;) {
        PathDiagram g = testing::random_dag(rng, vertices, 0.3);
        if (static_cast<int>(g.vertex_count()) == vertices) return g;
    }
}

void bm_dsep_fast(benchmark::State& state) {
    PathDiagram g = make_dag(static_cast<int>(state.range(0)), 0xBE7C);
    const auto& v = g.vertices();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            d_separated(g, VariableSet{v.front()}, VariableSet{v.back()},
                        VariableSet{v[v.size() / 2]}, DsepEngine::fast));
}
BENCHMARK(bm_dsep_fast)->Arg(8)->Arg(10);

void bm_dsep_oracle(benchmark::State& state) {
    PathDiagram g = make_dag(static_cast<int>(state.range(0)), 0xBE7C);
    const auto& v = g.vertices();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            d_separated(g, VariableSet{v.front()}, VariableSet{v.back()},
                        VariableSet{v[v.size() / 2]}, DsepEngine::oracle));
}
BENCHMARK(bm_dsep_oracle)->Arg(8)->Arg(10);

void bm_implied_covariance(benchmark::State& state) {
    testing::Rng rng(0x51E);
    PathDiagram g = testing::random_sem(rng, static_cast<int>(state.range(0)), 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(implied_covariance(g));
}
BENCHMARK(bm_implied_covariance)->Arg(8)->Arg(16);

void bm_enumerate_back_door(benchmark::State& state) {
    PathDiagram g = embedded_dataset("fig1-template").graph.value();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            enumerate_criterion(g, CriterionKind::back_door, "X", "Y",
                                static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(bm_enumerate_back_door)->Arg(1)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
