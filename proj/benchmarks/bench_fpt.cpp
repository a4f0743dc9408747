#include "fpt/decay.hpp"
#include "fpt/density.hpp"
#include "fpt/forcefield.hpp"
#include "fpt/hseries.hpp"
#include "fpt/oracle.hpp"
#include "fpt/oupcf.hpp"

#include <benchmark/benchmark.h>

namespace {

fpt::Model ou() { return fpt::builtin(fpt::BuiltinParams{}); }

void BM_Pcf(benchmark::State& state) {
    const double s = -0.01 * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fpt::pcf(s, 0.7));
}
BENCHMARK(BM_Pcf)->Arg(50)->Arg(150)->Arg(450);

void BM_RightmostZero(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fpt::rightmost_zero(1.0));
}
BENCHMARK(BM_RightmostZero);

void BM_BuildTable(benchmark::State& state) {
    const auto m = ou();
    fpt::HGrid g;
    g.z_max = 3.0;
    const auto r_max = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fpt::build_table(m.field, m.measure, g, r_max));
}
BENCHMARK(BM_BuildTable)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EvalDensity(benchmark::State& state) {
    const auto d = fpt::make_density_model(ou(), -1.0, 1.0);
    double tau = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpt::eval_density(d, tau));
        tau = tau < 10.0 ? tau * 1.01 : 0.01;
    }
}
BENCHMARK(BM_EvalDensity);

void BM_CalibrateRho(benchmark::State& state) {
    auto d = fpt::make_density_model(ou(), -1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(fpt::calibrate_rho(d));
}
BENCHMARK(BM_CalibrateRho)->Unit(benchmark::kMicrosecond);

void BM_SolvePde(benchmark::State& state) {
    const auto m = ou();
    fpt::PdeOptions o;
    o.tau_max = 2.0;
    o.probes = {-1.0};
    for (auto _ : state) benchmark::DoNotOptimize(fpt::solve_pde(m.field, 0.0, o));
}
BENCHMARK(BM_SolvePde)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
