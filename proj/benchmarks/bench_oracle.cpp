#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "qtripod/oracle.hpp"

using namespace qtripod;

namespace {

void BM_Rk4TenUnits(benchmark::State& state) {
    ModelParams p;
    p.mu = std::numbers::pi;
    p.delta = {2.0, 4.0, 6.0};
    p.chi = 0.1;
    p.field = FieldSpec(30, 0.07, DeformationSpec(0.9));
    const std::vector<double> grid{0.0, 5.0, 10.0};
    IntegratorOptions o;
    o.step = 1e-3;
    o.mode = static_cast<OracleMode>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(p, AtomInit::uniform(), grid, o));
    state.SetItemsProcessed(state.iterations() * 31 * 10000);
}
BENCHMARK(BM_Rk4TenUnits)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
