#include "kll/counting.hpp"
#include "kll/finquot.hpp"
#include "kll/fpgroups.hpp"
#include "kll/numfield.hpp"
#include "kll/taugraphs.hpp"
#include "kll/towers.hpp"
#include "kll/trivalent.hpp"

#include <benchmark/benchmark.h>

using namespace kll;

static void BM_SplitPrime(benchmark::State& state) {
    const NumberField k(QPoly::from_ints({1, 0, -2, -1, 0, 1}));
    for (auto _ : state) benchmark::DoNotOptimize(split_prime(k, state.range(0)));
}
BENCHMARK(BM_SplitPrime)->Arg(11)->Arg(101)->Arg(1009);

static void BM_LowIndexA5(benchmark::State& state) {
    const Presentation a5 = Presentation::parse({"x", "y"}, {"xx", "yyy", "xyxyxyxyxy"});
    for (auto _ : state) benchmark::DoNotOptimize(low_index_subgroups(a5, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LowIndexA5)->Arg(6)->Arg(12);

static void BM_CheegerCycle(benchmark::State& state) {
    const CosetGraph g = CosetGraph::cycle(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cheeger_exact(g));
}
BENCHMARK(BM_CheegerCycle)->DenseRange(12, 24, 4);

static void BM_SpectralBounds(benchmark::State& state) {
    const CosetGraph g = CosetGraph::cycle(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cheeger_spectral_bounds(g));
}
BENCHMARK(BM_SpectralBounds)->Arg(16)->Arg(32)->Arg(64);

static void BM_ProductClosure(benchmark::State& state) {
    const ProductSpace s = ProductSpace::psl2_primes({5, 7, 11});
    auto tuple = [&](long a, long b, long c, long d) {
        ProductElement x;
        for (const auto& f : s.factors()) x.push_back(f.make(a, b, c, d));
        return s.normalize(x);
    };
    const std::vector<ProductElement> gens = {tuple(1, 1, 0, 1), tuple(1, 0, 1, 1)};
    for (auto _ : state) benchmark::DoNotOptimize(product_surjectivity(s, gens));
}
BENCHMARK(BM_ProductClosure)->Unit(benchmark::kMillisecond);

static void BM_Census(benchmark::State& state) {
    const FiniteMatrixGroup g = sl2_field(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(subgroup_census(g));
}
BENCHMARK(BM_Census)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_TrivalentGeneration(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(connected_trivalent_graphs(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TrivalentGeneration)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_TowerBound(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tower_lower_bound(Integer(50), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TowerBound)->Arg(30)->Arg(100);

BENCHMARK_MAIN();
