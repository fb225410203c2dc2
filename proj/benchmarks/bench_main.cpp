#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "osample/order_selection.hpp"
#include "osample/rng.hpp"
#include "osample/spectral_core.hpp"
#include "osample/spectral_equality.hpp"

using namespace osample;

namespace {

TimeSeries noise(std::size_t T) {
    auto rng = make_rng(2024);
    std::normal_distribution<double> z;
    std::vector<double> x(T);
    for (auto& v : x) v = z(rng);
    return TimeSeries(std::move(x));
}

}  // namespace

static void BM_Dft(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dft(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

static void BM_OrthogonalSample(benchmark::State& state) {
    const auto g = dft(noise(static_cast<std::size_t>(state.range(0))));
    const auto phi = WeightFunction::lag_exponential(1);
    for (auto _ : state) benchmark::DoNotOptimize(orthogonal_sample(g, phi, 30));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OrthogonalSample)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

static void BM_SelectM(benchmark::State& state) {
    const auto T = static_cast<std::size_t>(state.range(0));
    const auto g = dft(noise(T));
    const auto phi = WeightFunction::lag_exponential(1);
    const auto set = feasible_search_set(T, search_range(10, 30), 4);
    for (auto _ : state) benchmark::DoNotOptimize(select_M(g, phi, set, 4));
}
BENCHMARK(BM_SelectM)->Arg(100)->Arg(500)->Arg(5000);

static void BM_KernelEstimate(benchmark::State& state) {
    const auto g = dft(noise(static_cast<std::size_t>(state.range(0))));
    const auto k = KernelSpec::daniell(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(kernel_spectral_estimate(g, k, 3));
}
BENCHMARK(BM_KernelEstimate)->Arg(512)->Arg(1024)->Arg(1 << 14);

BENCHMARK_MAIN();
