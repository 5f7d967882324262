#include <benchmark/benchmark.h>

#include "toriclab/venkov.hpp"

using namespace toriclab;

static void BM_EnumerateSphere(benchmark::State& state) {
    const i64 d = state.range(0);
    TernaryForm q = sphere_form();
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_representations(q, d).points.size());
    state.SetLabel("d = " + std::to_string(d));
}
BENCHMARK(BM_EnumerateSphere)->Arg(101)->Arg(1001)->Arg(10001)->Arg(100003);

static void BM_EnumerateGenusForm(benchmark::State& state) {
    TernaryForm q = example_form("Q1_2");
    for (auto _ : state) benchmark::DoNotOptimize(representation_count(q, state.range(0)));
}
BENCHMARK(BM_EnumerateGenusForm)->Arg(1001)->Arg(10001);

static void BM_ClassGroup(benchmark::State& state) {
    i64 D = state.range(0);
    while (!QuadField::is_fundamental(D)) ++D;
    for (auto _ : state) {
        ClassGroup G{QuadField(D)};
        benchmark::DoNotOptimize(G.h());
    }
}
BENCHMARK(BM_ClassGroup)->Arg(2003)->Arg(40003)->Arg(400003);

static void BM_Compose(benchmark::State& state) {
    ClassGroup G{QuadField(40003)};
    const auto& els = G.elements();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(els[i % els.size()], els[(i * 7 + 3) % els.size()]));
        ++i;
    }
}
BENCHMARK(BM_Compose);

static void BM_ClassAction(benchmark::State& state) {
    MaximalOrder O = MaximalOrder::create(2);
    QuadField F(404);  // d = 101
    ClassGroup G(F);
    auto emb = Embedding::find(O, F);
    int t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            class_action(*emb, G.elements()[static_cast<std::size_t>(t % G.h())], emb->base_point()));
        ++t;
    }
}
BENCHMARK(BM_ClassAction);

static void BM_IdealClasses(benchmark::State& state) {
    for (auto _ : state) {
        auto cs = ideal_classes(MaximalOrder::create(state.range(0)));
        benchmark::DoNotOptimize(cs.representatives.size());
    }
}
BENCHMARK(BM_IdealClasses)->Arg(11)->Arg(19)->Arg(47);

BENCHMARK_MAIN();
