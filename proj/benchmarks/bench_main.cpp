#include <benchmark/benchmark.h>

#include "gmdiv/divergences.hpp"
#include "gmdiv/hermite.hpp"
#include "gmdiv/sharpness.hpp"

namespace {

using namespace gmdiv;

MixingMeasure three_atoms(double shift) {
    MixingMeasure m;
    m.d = 1;
    m.radius_M = 1.0;
    m.atoms = {{-0.8 + shift}, {0.1 + shift}, {0.7 + shift}};
    m.weights = {0.3, 0.3, 0.4};
    return m;
}

void BM_divergence_tv(benchmark::State& state) {
    const auto a = three_atoms(0.0), b = three_atoms(0.05);
    for (auto _ : state)
        benchmark::DoNotOptimize(divergence(DivKind::TV, a, b).value);
}
BENCHMARK(BM_divergence_tv);

void BM_cd_kernel_diag(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::vector<double> x{0.7, -0.3};
    for (auto _ : state) benchmark::DoNotOptimize(cd_kernel_diag(n, x));
}
BENCHMARK(BM_cd_kernel_diag)->Arg(4)->Arg(10);

void BM_sharp_construct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(construct_base(n, 1.0).solve_residual);
}
BENCHMARK(BM_sharp_construct)->Arg(11)->Arg(19);

}  // namespace

BENCHMARK_MAIN();
