#include <benchmark/benchmark.h>

#include "am/killing.hpp"
#include "am/zoo.hpp"

using namespace am;

static void BM_JetMultiply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Vec x = Vec::LinSpaced(n, 0.1, 0.9);
    JetVec j = seed_jets(x);
    Jet a = sin(j[0]) * j[n - 1] + j[0];
    Jet b = exp(j[n - 1]) + j[0] * j[0];
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(3)->Arg(6);

static void BM_RicciSphere(benchmark::State& state) {
    Chart s2 = zoo::round_s2(1.0);
    Point p{Vec{{1.1, 2.0}}};
    for (auto _ : state) benchmark::DoNotOptimize(ricci(s2, p));
}
BENCHMARK(BM_RicciSphere);

static void BM_RicciTotalSpace(benchmark::State& state) {
    TotalBundle tb = build_total_bundle(zoo::t2_over_s2xs2());
    PointSampler sampler(tb.chart, kDefaultSeed);
    Point p = sampler.next();
    for (auto _ : state) benchmark::DoNotOptimize(ricci(tb.chart, p));
}
BENCHMARK(BM_RicciTotalSpace);

static void BM_CyclicResidualFrame(benchmark::State& state) {
    TotalBundle tb = build_total_bundle(zoo::heisenberg());
    TensorField ric = ricci_field(tb.chart);
    PointSampler sampler(tb.chart, kDefaultSeed);
    Point p = sampler.next();
    for (auto _ : state) benchmark::DoNotOptimize(cyclic_residual_frame(ric, p));
}
BENCHMARK(BM_CyclicResidualFrame);

static void BM_RicciDecomposition(benchmark::State& state) {
    TotalBundle tb = build_total_bundle(zoo::hopf_berger(1.0));
    PointSampler sampler(tb.chart, kDefaultSeed);
    Point p = sampler.next();
    for (auto _ : state) benchmark::DoNotOptimize(ricci_decomposition(tb, p));
}
BENCHMARK(BM_RicciDecomposition);

BENCHMARK_MAIN();
