// Serial reference against the OpenMP kernels. Set OMP_NUM_THREADS to vary the thread count.
#include <cumcal/brownian_mc.hpp>
#include <cumcal/experiments.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace cumcal;

auto extremes_config(benchmark::State const& state) -> SimulationConfig
{
    return {static_cast<std::size_t>(state.range(0)), 1024, 1};
}

auto sweep_config() -> SweepNConfig
{
    SweepNConfig config;
    config.sizes = {4096, 8192, 16384};
    config.realizations = 3;
    config.seed = 1;
    return config;
}

void extremes_serial(benchmark::State& state)
{
    auto const config = extremes_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_extremes_serial(config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void extremes_parallel(benchmark::State& state)
{
    auto const config = extremes_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_extremes(config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sweep_serial(benchmark::State& state)
{
    auto const config = sweep_config();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_n_serial(config));
}

void sweep_parallel(benchmark::State& state)
{
    auto const config = sweep_config();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_n(config));
}

} // namespace

BENCHMARK(extremes_serial)->Arg(10'000)->Arg(40'000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(extremes_parallel)->Arg(10'000)->Arg(40'000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(sweep_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(sweep_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
