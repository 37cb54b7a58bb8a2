#include "cribq/analytic.hpp"
#include "cribq/config.hpp"
#include "cribq/dynamics.hpp"
#include "cribq/medium.hpp"
#include "cribq/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace cribq;

namespace {

void BM_DetuningGrid(benchmark::State& state)
{
    const MediumConfig m = make_transverse(100.0, 4.0, 0.0);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(detuning_grid(m, n));
}
BENCHMARK(BM_DetuningGrid)->Arg(1939)->Arg(4001);

void BM_TransverseRun(benchmark::State& state)
{
    const TimeBinQubit q = make_qubit(0.6, 0.8, 0.0, 8.0, 1.0, 0.0);
    const MediumConfig m = make_transverse(10.0, 6.0, 0.0);
    ProtocolSchedule s;
    s.eta = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_protocol(q, m, s));
}
BENCHMARK(BM_TransverseRun)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LongitudinalRun(benchmark::State& state)
{
    const TimeBinQubit q = make_qubit(0.6, 0.8, 0.0, 4.0, 1.0, 0.0);
    const MediumConfig m = make_longitudinal(10.0, 1.0, 0.0);
    ProtocolSchedule s;
    s.eta = 2.0;
    s.nz = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_protocol(q, m, s));
}
BENCHMARK(BM_LongitudinalRun)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_AnalyticSurface(benchmark::State& state)
{
    const RunConfig c = parse_config("[medium]\nkind = longitudinal\nzeta_over_chi = 1\n"
                                     "[sweep]\nmetrics = gain, phase_diff_01\n"
                                     "axis1 = eta 0.1 10 101 log\naxis2 = kappa_eff 0.1 12 101 linear\n");
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep(c, SweepMode::fast));
    state.SetItemsProcessed(state.iterations() * 101 * 101);
}
BENCHMARK(BM_AnalyticSurface)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
