#include <benchmark/benchmark.h>

#include "jrsim/dynamics.hpp"
#include "jrsim/experiments.hpp"
#include "jrsim/scattering.hpp"

using namespace jrsim;

namespace {

const PhysicalScale kScale = PhysicalScale::centered(17.0, 300.0);

void BM_TotalTransfer(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = MassProfile::kink_from_opacity(kScale, 75.0, 6.0);
    const auto s = sample_on_grid(p, Grid(kScale, n));
    for (auto _ : state)
        benchmark::DoNotOptimize(total_transfer(s, 0.37 * p.amplitude(), kScale, MixingAngle(), ScatteringMode::ideal));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TotalTransfer)->Arg(3000)->Arg(30000);

void BM_TotalTransferGeneralized(benchmark::State& state) {
    const auto p = MassProfile::kink_from_opacity(kScale, 75.0, 6.0);
    const auto s = sample_on_grid(p, Grid(kScale, 3000));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            total_transfer(s, 0.37 * p.amplitude(), kScale, MixingAngle(0.2), ScatteringMode::generalized));
}
BENCHMARK(BM_TotalTransferGeneralized);

void BM_Spectrum801(benchmark::State& state) {
    const auto c = default_config();
    for (auto _ : state) benchmark::DoNotOptimize(run_spectrum(c));
}
BENCHMARK(BM_Spectrum801)->Unit(benchmark::kMillisecond);

void BM_SplitStep(benchmark::State& state) {
    const auto c = scenario_defaults("fig3-trapped");
    const auto grid = build_grid(c);
    const auto profile = build_profile(c);
    const SplitStepPropagator prop(sample_on_grid(profile, grid), c.scale);
    auto field = zero_mode_state(profile, grid, c.scale);
    for (auto _ : state) {
        prop.advance(field);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_SplitStep);

}  // namespace

BENCHMARK_MAIN();
