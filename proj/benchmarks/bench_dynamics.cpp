#include <numbers>

#include <benchmark/benchmark.h>

#include "qtripod/dynamics.hpp"

using namespace qtripod;

namespace {

ModelParams figure_params(int M, double chi) {
    ModelParams p;
    p.mu = std::numbers::pi / 2;
    p.delta = {2.0, 2.0, 2.0};
    p.chi = chi;
    p.field = FieldSpec(M, 0.8, DeformationSpec(0.9));
    return p;
}

void BM_ClosedFormSetup(benchmark::State& state) {
    const auto p = figure_params(static_cast<int>(state.range(0)), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(ClosedFormEvolution(p, AtomInit::uniform()));
}
BENCHMARK(BM_ClosedFormSetup)->Arg(30)->Arg(300);

void BM_ClosedFormState(benchmark::State& state) {
    const ClosedFormEvolution evo(figure_params(static_cast<int>(state.range(0)), 0.1), AtomInit::uniform());
    double T = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evo.state(T));
        T += 0.01;
    }
}
BENCHMARK(BM_ClosedFormState)->Arg(30)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
