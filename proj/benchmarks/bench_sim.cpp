#include <benchmark/benchmark.h>

#include "relaylab/rng.hpp"
#include "relaylab/sim.hpp"

using namespace relaylab;
using namespace relaylab::sim;

static void BM_PhiloxU64(benchmark::State& state) {
    Philox4x32 rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_PhiloxU64);

static void BM_ExponentialDraw(benchmark::State& state) {
    Philox4x32 rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_exponential(3.0));
}
BENCHMARK(BM_ExponentialDraw);

static void BM_FrameSnrLevel(benchmark::State& state) {
    const RelayMode mode = state.range(0) ? RelayMode::df_decode_check : RelayMode::af_fixed_gain;
    const FrameConfig cfg{8, 16, 2};
    const LinkBudget budget = LinkBudget::symmetric_db(10.0);
    FrameSimulator simulator(mode, cfg, budget, Fidelity::snr_level);
    std::uint64_t frame = 0;
    for (auto _ : state) {
        Philox4x32 rng(42, frame++);
        benchmark::DoNotOptimize(simulator.simulate(rng).errors);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FrameSnrLevel)->Arg(0)->Arg(1);

static void BM_FrameSymbolLevel(benchmark::State& state) {
    const FrameConfig cfg{8, 16, 2};
    const LinkBudget budget = LinkBudget::symmetric_db(10.0);
    FrameSimulator simulator(RelayMode::df_decode_check, cfg, budget, Fidelity::symbol_level);
    std::uint64_t frame = 0;
    for (auto _ : state) {
        Philox4x32 rng(42, frame++);
        benchmark::DoNotOptimize(simulator.simulate(rng).errors);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FrameSymbolLevel);

BENCHMARK_MAIN();
