#include <benchmark/benchmark.h>

#include "optokerr/optokerr.hpp"

using namespace optokerr;

namespace {

// Arg: t_max. The Volterra solve is O(N^2) in the step count.
void BM_SolveGreens(benchmark::State& state) {
    const BathSpectrum s{1.0, 0.3, 100.0};
    const double t_max = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_greens(s, t_max, 0.02).g_values.back());
    state.SetComplexityN(static_cast<long>(t_max / 0.02));
}
BENCHMARK(BM_SolveGreens)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond)->Complexity();

// The nested bath layer dominates, O(N^3).
void BM_EtaSeries(benchmark::State& state) {
    const BathSpectrum s{2.0, 0.3, 100.0};
    const double t_max = static_cast<double>(state.range(0));
    const auto T = solve_greens(s, t_max, 0.02);
    for (auto _ : state) benchmark::DoNotOptimize(eta_series(T, s, 1.0).eta.back());
    state.SetComplexityN(static_cast<long>(T.size()));
}
BENCHMARK(BM_EtaSeries)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNCubed);

void BM_EtaSeriesThreads(benchmark::State& state) {
    const BathSpectrum s{2.0, 0.3, 100.0};
    const auto T = solve_greens(s, 20.0, 0.02);
    EtaOptions o;
    o.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(eta_series(T, s, 1.0, {}, o).eta.back());
}
BENCHMARK(BM_EtaSeriesThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

// Arg: bath mode count.
void BM_OracleEta(benchmark::State& state) {
    const BathSpectrum s{1.0, 0.3, 1.0};
    const auto bath = discretize_bath(s, static_cast<std::size_t>(state.range(0)), 20.0, CouplingConvention::two_over_pi);
    for (auto _ : state) benchmark::DoNotOptimize(oracle_eta(bath, 1.0, 10.0, 0.02).eta.back());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleEta)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_KernelQuadrature(benchmark::State& state) {
    const BathSpectrum s{1.5, 0.3, 100.0};
    double t = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_C(s, t));
        t = t < 50.0 ? t * 1.1 : 0.01;
    }
}
BENCHMARK(BM_KernelQuadrature);

void BM_InvertLaplace(benchmark::State& state) {
    const auto g = LaplaceResponse::from_spectrum({0.5, 0.3, 100.0}, CouplingConvention::two_over_pi);
    for (auto _ : state) benchmark::DoNotOptimize(invert_laplace(g, 10.0, 1e-7));
}
BENCHMARK(BM_InvertLaplace)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
