#include <benchmark/benchmark.h>

#include "relaylab/analytic.hpp"
#include "relaylab/quadrature.hpp"
#include "relaylab/specfun.hpp"

using namespace relaylab;
using namespace relaylab::analytic;

static void BM_ExpIntegralE1(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::exp_integral_e1(x));
        x = x < 500.0 ? x * 1.01 : 0.1;
    }
}
BENCHMARK(BM_ExpIntegralE1);

static void BM_PerConditionalExact(benchmark::State& state) {
    double gamma = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(per_conditional_exact(gamma, 16).value());
        gamma = gamma < 300.0 ? gamma * 1.1 : 0.01;
    }
}
BENCHMARK(BM_PerConditionalExact);

static void BM_ExpansionBuild(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        PerExpansion expansion(k);
        benchmark::DoNotOptimize(expansion.terms().data());
    }
}
BENCHMARK(BM_ExpansionBuild)->Arg(16)->Arg(64);

static void BM_PerTotal(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const RelayMode mode = state.range(1) ? RelayMode::df_decode_check : RelayMode::af_fixed_gain;
    const FrameConfig cfg{8, k, 2};
    const LinkBudget budget = LinkBudget::symmetric_db(15.0);
    for (auto _ : state) benchmark::DoNotOptimize(per_total(mode, cfg, budget).value());
}
BENCHMARK(BM_PerTotal)->Args({16, 0})->Args({16, 1})->Args({64, 0})->Args({64, 1});

static void BM_QuadratureRayleigh(benchmark::State& state) {
    const LinkBudget budget = LinkBudget::symmetric_db(15.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(per_quadrature_rayleigh(16, budget.gamma_sd));
}
BENCHMARK(BM_QuadratureRayleigh);

BENCHMARK_MAIN();
