#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "qrsim/kernels.hpp"

using namespace qrsim;
using kernels::Execution;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_ScanColdCurrent(benchmark::State& state)
{
    TwoBandInputs in;
    in.omega0 = 2.0;
    in.cold = make_bath(BathPreset::Fracton, 0.01, 1.0);
    in.hot = make_bath(BathPreset::HotCubic, 0.5, 100.0, 1e3);
    std::vector<double> x;
    for (int i = 0; i < 4096; ++i) x.push_back(1e-6 * std::pow(0.999e6, i / 4095.0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::scan_cold_current(in, x, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(x.size()));
}

void BM_SteadyBatch(benchmark::State& state)
{
    std::vector<kernels::SteadyPoint> pts;
    for (int i = 0; i < 256; ++i) {
        kernels::SteadyPoint pt;
        pt.modulation.omega0 = 10.0;
        pt.modulation.tau = std::numbers::pi / (5.5 + 4.0 * i / 256.0);
        pt.cold = make_bath(BathPreset::Magnon, 1.0, 5.0);
        pt.hot = make_bath(BathPreset::HotCubic, 5.0, 100.0);
        pt.with_lindblad = true;
        pts.push_back(pt);
    }
    for (auto _ : state) benchmark::DoNotOptimize(kernels::steady_batch(pts, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_PeriodAveragedRates(benchmark::State& state)
{
    ModulationScheme mod;
    mod.omega0 = 1.0;
    mod.tau = 4.0 * std::numbers::pi;
    mod.truncation = 11;
    const auto bath = make_bath(BathPreset::Magnon, 0.5, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::period_averaged_rates(mod, bath, 20.0, 32, mode(state)));
    }
}

} // namespace

BENCHMARK(BM_ScanColdCurrent)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_SteadyBatch)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PeriodAveragedRates)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
