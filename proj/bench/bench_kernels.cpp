// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "kljn/protocol.hpp"

namespace {

kljn::SystemConfig bench_config(double gamma)
{
    kljn::SystemConfig cfg;
    cfg.alpha = 100.0;
    cfg.gamma = gamma;
    return cfg;
}

void BM_PeriodsSerial(benchmark::State& state)
{
    const auto cfg = bench_config(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kljn::simulate_periods_serial(cfg, 20000, 7));
    state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_PeriodsParallel(benchmark::State& state)
{
    const auto cfg = bench_config(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kljn::simulate_periods(cfg, 20000, 7));
    state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_CalibrationSerial(benchmark::State& state)
{
    const auto cfg = bench_config(50.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(kljn::calibrate_levels_serial(cfg, kljn::BitState::b0110, 1u << 22, 3));
    state.SetItemsProcessed(state.iterations() * (1 << 22));
}

void BM_CalibrationParallel(benchmark::State& state)
{
    const auto cfg = bench_config(50.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(kljn::calibrate_levels(cfg, kljn::BitState::b0110, 1u << 22, 3));
    state.SetItemsProcessed(state.iterations() * (1 << 22));
}

} // namespace

BENCHMARK(BM_PeriodsSerial)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PeriodsParallel)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CalibrationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CalibrationParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
