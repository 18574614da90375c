#include <benchmark/benchmark.h>

#include <momentlab/kernels.hpp>
#include <momentlab/lgreen.hpp>
#include <momentlab/modforms.hpp>
#include <momentlab/moments.hpp>
#include <momentlab/real.hpp>

using namespace momentlab;

static void BM_PhiK(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    Real x("0.3");
    for (auto _ : state) benchmark::DoNotOptimize(phi_k(x, k).value);
}
BENCHMARK(BM_PhiK)->Arg(6)->Arg(20)->Arg(80)->Unit(benchmark::kMicrosecond);

static void BM_PhiCapital(benchmark::State& state) {
    KernelParams p;
    p.k = static_cast<int>(state.range(0));
    Real x("0.9");
    for (auto _ : state) benchmark::DoNotOptimize(Phi_k(x, p).value);
}
BENCHMARK(BM_PhiCapital)->Arg(6)->Arg(20)->Arg(80)->Unit(benchmark::kMicrosecond);

static void BM_LGApprox(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    Real x("0.3");
    for (auto _ : state) benchmark::DoNotOptimize(lg_approx_phi(x, k, 1).value);
}
BENCHMARK(BM_LGApprox)->Arg(20)->Arg(160)->Unit(benchmark::kMicrosecond);

static void BM_HeckeEigenforms(benchmark::State& state) {
    int w = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hecke_eigenforms(w).size());
}
BENCHMARK(BM_HeckeEigenforms)->Arg(24)->Arg(48)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_PeterssonRhs(benchmark::State& state) {
    int w = static_cast<int>(state.range(0));
    auto pairs = default_petersson_pairs(cusp_dimension(w));
    for (auto _ : state) benchmark::DoNotOptimize(petersson_rhs(w, pairs, 200).size());
}
BENCHMARK(BM_PeterssonRhs)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_SecondMomentExact(benchmark::State& state) {
    int w = static_cast<int>(state.range(0));
    form_space(w);
    for (auto _ : state) benchmark::DoNotOptimize(second_moment_exact(1, w).residual);
}
BENCHMARK(BM_SecondMomentExact)->Arg(12)->Arg(28)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
