#include <random>

#include <benchmark/benchmark.h>

#include "qtripod/observables.hpp"

using namespace qtripod;

namespace {

JointState random_state(int M) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    Eigen::VectorXcd v(4 * (M + 2));
    for (auto& x : v) x = {n(rng), n(rng)};
    v.normalize();
    return JointState(M, v);
}

void BM_ReduceAtom(benchmark::State& state) {
    const auto s = random_state(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reduce_atom(s));
}
BENCHMARK(BM_ReduceAtom)->Arg(30)->Arg(300);

void BM_LinearEntropy(benchmark::State& state) {
    const auto s = random_state(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(linear_entropy(s));
}
BENCHMARK(BM_LinearEntropy)->Arg(30)->Arg(300);

void BM_Diagnose(benchmark::State& state) {
    const auto rho = reduce_field(random_state(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(diagnose(rho));
}
BENCHMARK(BM_Diagnose)->Arg(30);

}  // namespace
