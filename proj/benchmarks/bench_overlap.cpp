#include "latgate/dipole_kernel.hpp"
#include "latgate/gate.hpp"
#include "latgate/overlap.hpp"
#include "latgate/special_functions.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SphericalBesselPair(benchmark::State& state) {
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(latgate::spherical_bessel_pair(2, x));
        x = x < 50.0 ? x * 1.001 : 0.01;
    }
}
BENCHMARK(BM_SphericalBesselPair);

void BM_KernelFG(benchmark::State& state) {
    double kr = 0.02;
    for (auto _ : state) {
        benchmark::DoNotOptimize(latgate::fg(latgate::RelativePosition(kr, 0.3)));
        kr = kr < 20.0 ? kr * 1.001 : 0.02;
    }
}
BENCHMARK(BM_KernelFG);

void BM_MeanFG(benchmark::State& state) {
    const double eta_perp = static_cast<double>(state.range(0)) / 100.0;
    const latgate::TrapGeometry geom(eta_perp, 2.0 * eta_perp);
    for (auto _ : state) benchmark::DoNotOptimize(latgate::mean_fg(geom));
}
BENCHMARK(BM_MeanFG)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_TruthTable(benchmark::State& state) {
    const auto op = latgate::make_operating_point(2880.0, 0.73, 38.35, 0.984);
    for (auto _ : state) benchmark::DoNotOptimize(latgate::truth_table(op.env, op.pulse));
}
BENCHMARK(BM_TruthTable);

}  // namespace

BENCHMARK_MAIN();
