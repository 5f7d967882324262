#include <benchmark/benchmark.h>

#include "toriclab/lfunctions.hpp"

using namespace toriclab;

static void BM_AChiStream(benchmark::State& state) {
    ClassGroup G{QuadField(479)};
    SplittingTable st(G, state.range(0));
    auto chi = characters(G)[1];
    for (auto _ : state) benchmark::DoNotOptimize(a_chi_stream(chi, st, state.range(0)).size());
}
BENCHMARK(BM_AChiStream)->Arg(1 << 14)->Arg(1 << 17);

static void BM_LambdaStream11a(benchmark::State& state) {
    const HeckeForm& f = builtin_form("11a");
    f.lambda_stream(state.range(0));  // warm the prime cache outside the loop
    for (auto _ : state) benchmark::DoNotOptimize(f.lambda_stream(state.range(0)).size());
}
BENCHMARK(BM_LambdaStream11a)->Arg(1 << 14)->Arg(1 << 17);

static void BM_CentralValue(benchmark::State& state) {
    const HeckeForm& f = builtin_form("11a");
    const i64 D = state.range(0);
    QuadField F(D);
    ClassGroup G(F);
    LValueOptions opt;
    opt.strict = false;
    SplittingTable st(G, afe_stream_bound(f, F, opt));
    auto chars = characters(G);
    int t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            central_value(f, G, chars[static_cast<std::size_t>(t % G.h())], st, opt).value);
        ++t;
    }
    state.SetLabel("conductor " + std::to_string(static_cast<i64>(rankin_selberg_conductor(f, F))));
}
BENCHMARK(BM_CentralValue)->Arg(23)->Arg(163)->Arg(499)->Unit(benchmark::kMillisecond);

static void BM_AfeWeightTable(benchmark::State& state) {
    for (auto _ : state) {
        AfeWeight w(4, 2);
        benchmark::DoNotOptimize(w.y_cut());
    }
}
BENCHMARK(BM_AfeWeightTable)->Unit(benchmark::kMillisecond);

static void BM_LAtOne(benchmark::State& state) {
    const HeckeForm& f = builtin_form("11a");
    QuadField F(163);
    for (auto _ : state) benchmark::DoNotOptimize(l_at_one_ad_eta(f, F, double(state.range(0))));
}
BENCHMARK(BM_LAtOne)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);
